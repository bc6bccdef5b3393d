#pragma once

#include <cstddef>
#include <vector>

#include "lexidrift/common.hpp"

namespace lexidrift {

struct ClassMetrics {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct Scores {
    size_t n = 0;
    double accuracy = 0.0;
    double macro_f1 = 0.0;
    ClassMetrics positive;
    ClassMetrics negative;
};

// Binary accuracy / per-class precision, recall, F1 / macro-F1 with the
// 0/0 -> 0 convention at every division. Lengths must match and be >= 1.
Scores score(const std::vector<Polarity>& predictions, const std::vector<Polarity>& gold);

}  // namespace lexidrift
