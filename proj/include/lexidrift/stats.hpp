#pragma once

#include <cstdint>
#include <vector>

namespace lexidrift {

// Survival function of the chi-squared distribution with 1 degree of
// freedom: P(X > x) = erfc(sqrt(x/2)).
double chi2_survival_1dof(double x);

struct Chi2Result {
    double statistic = 0.0;
    double p_value = 1.0;
};

// Pearson chi-squared on a 2x2 table, no continuity correction. A zero row
// or column margin yields (0, 1). Counts must be non-negative with a
// positive total.
Chi2Result chi2_two_sided(int64_t a, int64_t b, int64_t c, int64_t d);

// Benjamini-Hochberg step-up: sort p ascending, find the largest k with
// p_(k) <= k*q/m, flag every hypothesis of rank <= k. Returns one flag per
// input p-value, original order.
std::vector<bool> benjamini_hochberg(const std::vector<double>& p_values, double q);

}  // namespace lexidrift
