#include "lexidrift/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lexidrift/common.hpp"

namespace lexidrift {

double chi2_survival_1dof(double x) {
    if (x <= 0.0) return 1.0;
    return std::erfc(std::sqrt(0.5 * x));
}

Chi2Result chi2_two_sided(int64_t a, int64_t b, int64_t c, int64_t d) {
    if (a < 0 || b < 0 || c < 0 || d < 0)
        throw Error("chi2_two_sided: counts must be non-negative");
    const int64_t n = a + b + c + d;
    if (n < 1) throw Error("chi2_two_sided: total count must be >= 1");
    const double row1 = static_cast<double>(a + b);
    const double row2 = static_cast<double>(c + d);
    const double col1 = static_cast<double>(a + c);
    const double col2 = static_cast<double>(b + d);
    if (row1 == 0.0 || row2 == 0.0 || col1 == 0.0 || col2 == 0.0) return {0.0, 1.0};
    const double det = static_cast<double>(a) * static_cast<double>(d) -
                       static_cast<double>(b) * static_cast<double>(c);
    const double stat = static_cast<double>(n) * det * det / (row1 * row2 * col1 * col2);
    return {stat, chi2_survival_1dof(stat)};
}

std::vector<bool> benjamini_hochberg(const std::vector<double>& p_values, double q) {
    if (!(q > 0.0 && q < 1.0)) throw Error("benjamini_hochberg: q must be in (0,1)");
    const size_t m = p_values.size();
    std::vector<bool> flags(m, false);
    if (m == 0) return flags;
    for (double p : p_values)
        if (!(p >= 0.0 && p <= 1.0)) throw Error("benjamini_hochberg: p-values must be in [0,1]");

    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t lhs, size_t rhs) { return p_values[lhs] < p_values[rhs]; });

    size_t cutoff = 0;  // number of rejected hypotheses
    for (size_t k = m; k >= 1; --k) {
        if (p_values[order[k - 1]] <= static_cast<double>(k) * q / static_cast<double>(m)) {
            cutoff = k;
            break;
        }
    }
    for (size_t k = 0; k < cutoff; ++k) flags[order[k]] = true;
    return flags;
}

}  // namespace lexidrift
