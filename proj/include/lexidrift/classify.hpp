#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexidrift/common.hpp"
#include "lexidrift/embed.hpp"
#include "lexidrift/lexicon.hpp"

namespace lexidrift {

struct LabeledSample {
    std::string word;
    std::vector<double> features;
    Polarity label = Polarity::Positive;
    double weight = 1.0;
};

struct LogRegModel {
    std::vector<double> coefficients;
    double intercept = 0.0;
    double l2_strength = 1.0;
    int iterations_run = 0;
    double final_objective = 0.0;

    size_t dim() const { return coefficients.size(); }
};

// Full-batch gradient descent with Armijo backtracking from zero
// initialization; minimizes sum_i w_i * nll_i + (l2/2)*||coef||^2 with the
// intercept unpenalized. Stops when the gradient max-norm drops below tol or
// after max_iters steps. Deterministic: identical inputs give identical
// iterate sequences regardless of thread count.
LogRegModel train_weighted_logreg(const std::vector<LabeledSample>& samples, double l2 = 1.0,
                                  double tol = 1e-6, int max_iters = 1000);

struct Prediction {
    Polarity label = Polarity::Positive;
    double probability = 0.5;  // P(POSITIVE)
};

// p = sigmoid(coef . x + intercept); POSITIVE iff p >= 0.5.
Prediction predict(const LogRegModel& model, const std::vector<double>& features);

double decision_value(const LogRegModel& model, const std::vector<double>& features);

struct TuneConfig {
    std::vector<double> grid = {0.0, 0.5, 1.0, 2.0};
    int folds = 5;
    uint64_t seed = 42;
    double l2 = 1.0;
    double tol = 1e-6;
    int max_iters = 1000;
    double lambda_floor = 1e-6;
    int workers = 1;

    void validate() const;
};

struct TuneResult {
    double best_gamma = 0.0;
    std::vector<double> grid;          // as evaluated
    std::vector<double> mean_macro_f1;  // aligned with grid
    uint64_t seed = 0;                 // fold-assignment seed echo
};

// Stratified k-fold cross-validation over the seed lexicon: for each gamma,
// sample weights are recomputed from the drift lambdas, a model is trained
// per fold and scored on the held-out fold; the gamma with the best mean
// macro-F1 wins, ties going to the smaller gamma. Lexicon words missing from
// the embedding space are dropped; words missing from the drift table get a
// unit pre-normalization weight.
TuneResult tune_weight_exponent(const SeedLexicon& lexicon, const DriftTable& drift,
                                const EmbeddingSpace& embedding, const TuneConfig& config);

// Structured text document: format tag, dim, config echo, training metadata,
// intercept and coefficients at 17 significant digits.
void save_model(const std::string& path, const LogRegModel& model);
LogRegModel load_model(const std::string& path);

}  // namespace lexidrift
