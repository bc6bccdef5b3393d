#include "lexidrift/classify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lexidrift/metrics.hpp"
#include "lexidrift/parallel.hpp"
#include "lexidrift/rng.hpp"

namespace lexidrift {

namespace {

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) without overflow.
double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

struct Problem {
    const std::vector<LabeledSample>* samples;
    size_t dim;
    double l2;

    // objective = sum_i w_i * (softplus(z_i) - y_i * z_i) + (l2/2) * ||coef||^2
    double objective(const std::vector<double>& coef, double intercept) const {
        double obj = 0.0;
        for (const auto& s : *samples) {
            double z = intercept;
            for (size_t d = 0; d < dim; ++d) z += coef[d] * s.features[d];
            double y = s.label == Polarity::Positive ? 1.0 : 0.0;
            obj += s.weight * (softplus(z) - y * z);
        }
        double reg = 0.0;
        for (double c : coef) reg += c * c;
        return obj + 0.5 * l2 * reg;
    }

    void gradient(const std::vector<double>& coef, double intercept,
                  std::vector<double>& g_coef, double& g_intercept) const {
        std::fill(g_coef.begin(), g_coef.end(), 0.0);
        g_intercept = 0.0;
        for (const auto& s : *samples) {
            double z = intercept;
            for (size_t d = 0; d < dim; ++d) z += coef[d] * s.features[d];
            double y = s.label == Polarity::Positive ? 1.0 : 0.0;
            double r = s.weight * (sigmoid(z) - y);
            for (size_t d = 0; d < dim; ++d) g_coef[d] += r * s.features[d];
            g_intercept += r;
        }
        for (size_t d = 0; d < dim; ++d) g_coef[d] += l2 * coef[d];
    }
};

}  // namespace

LogRegModel train_weighted_logreg(const std::vector<LabeledSample>& samples, double l2,
                                  double tol, int max_iters) {
    if (samples.empty()) throw Error("train: no samples");
    if (!(l2 >= 0.0) || !std::isfinite(l2)) throw Error("train: l2 must be a finite real >= 0");
    if (!(tol > 0.0)) throw Error("train: tol must be > 0");
    if (max_iters < 1) throw Error("train: max_iters must be >= 1");

    const size_t dim = samples[0].features.size();
    if (dim == 0) throw Error("train: zero-dimensional features");
    size_t n_pos = 0, n_neg = 0;
    for (const auto& s : samples) {
        if (s.features.size() != dim) {
            throw Error("train: inconsistent feature dimension for word `" + s.word + "`");
        }
        for (double v : s.features) {
            if (!std::isfinite(v)) throw Error("train: non-finite feature for word `" + s.word + "`");
        }
        if (!(s.weight > 0.0) || !std::isfinite(s.weight)) {
            throw Error("train: sample weight must be a finite real > 0 for word `" + s.word + "`");
        }
        (s.label == Polarity::Positive ? n_pos : n_neg)++;
    }
    if (n_pos == 0 || n_neg == 0) {
        throw Error("train: need at least one sample of each class");
    }

    Problem prob{&samples, dim, l2};
    std::vector<double> coef(dim, 0.0);
    double intercept = 0.0;
    double obj = prob.objective(coef, intercept);
    if (!std::isfinite(obj)) throw Error("train: non-finite objective");

    std::vector<double> grad(dim, 0.0);
    double g_intercept = 0.0;
    std::vector<double> trial(dim, 0.0);
    double step = 1.0;
    int iter = 0;
    for (; iter < max_iters; ++iter) {
        prob.gradient(coef, intercept, grad, g_intercept);
        double max_norm = std::abs(g_intercept);
        double sq_norm = g_intercept * g_intercept;
        for (double g : grad) {
            max_norm = std::max(max_norm, std::abs(g));
            sq_norm += g * g;
        }
        if (max_norm < tol) break;

        // Armijo backtracking along the negative gradient.
        constexpr double kArmijo = 1e-4;
        bool accepted = false;
        while (step > 1e-18) {
            for (size_t d = 0; d < dim; ++d) trial[d] = coef[d] - step * grad[d];
            double trial_intercept = intercept - step * g_intercept;
            double trial_obj = prob.objective(trial, trial_intercept);
            if (std::isfinite(trial_obj) && trial_obj <= obj - kArmijo * step * sq_norm) {
                coef.swap(trial);
                intercept = trial_intercept;
                obj = trial_obj;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // no descent step representable: numerically converged
        step = std::min(step * 2.0, 1e6);
    }
    if (!std::isfinite(obj)) throw Error("train: non-finite objective");

    LogRegModel model;
    model.coefficients = std::move(coef);
    model.intercept = intercept;
    model.l2_strength = l2;
    model.iterations_run = iter;
    model.final_objective = obj;
    return model;
}

double decision_value(const LogRegModel& model, const std::vector<double>& features) {
    if (features.size() != model.coefficients.size()) {
        throw Error("predict: feature length " + std::to_string(features.size()) +
                    " does not match model dim " + std::to_string(model.coefficients.size()));
    }
    double z = model.intercept;
    for (size_t d = 0; d < features.size(); ++d) z += model.coefficients[d] * features[d];
    return z;
}

Prediction predict(const LogRegModel& model, const std::vector<double>& features) {
    double p = sigmoid(decision_value(model, features));
    Prediction pred;
    pred.probability = p;
    pred.label = p >= 0.5 ? Polarity::Positive : Polarity::Negative;
    return pred;
}

void TuneConfig::validate() const {
    if (grid.empty()) throw Error("tune: gamma grid must be non-empty");
    for (double g : grid) {
        if (!(g >= 0.0) || !std::isfinite(g)) throw Error("tune: gamma must be a finite real >= 0");
    }
    if (folds < 2) throw Error("tune: folds must be >= 2");
    if (!(l2 >= 0.0) || !std::isfinite(l2)) throw Error("tune: l2 must be a finite real >= 0");
    if (!(tol > 0.0)) throw Error("tune: tol must be > 0");
    if (max_iters < 1) throw Error("tune: max_iters must be >= 1");
    if (!(lambda_floor > 0.0) || !std::isfinite(lambda_floor)) {
        throw Error("tune: lambda_floor must be a finite real > 0");
    }
    if (workers < 1) throw Error("tune: workers must be >= 1");
}

TuneResult tune_weight_exponent(const SeedLexicon& lexicon, const DriftTable& drift,
                                const EmbeddingSpace& embedding, const TuneConfig& config) {
    config.validate();

    // Samples in lexicographic word order; inverse-drift base 1/max(lambda,
    // floor), words without a drift entry get base 1 (unit weight at any
    // gamma).
    std::vector<LabeledSample> samples;
    std::vector<double> inv_lambda;
    for (const auto& [word, entry] : lexicon.entries) {
        const std::vector<double>* vec = embedding.find(word);
        if (!vec) continue;
        LabeledSample s;
        s.word = word;
        s.features = *vec;
        s.label = entry.polarity;
        samples.push_back(std::move(s));
        const DriftEntry* de = drift.find(word);
        inv_lambda.push_back(de ? 1.0 / std::max(de->lambda, config.lambda_floor) : 1.0);
    }

    const size_t folds = static_cast<size_t>(config.folds);
    std::vector<size_t> pos_idx, neg_idx;
    for (size_t i = 0; i < samples.size(); ++i) {
        (samples[i].label == Polarity::Positive ? pos_idx : neg_idx).push_back(i);
    }
    if (pos_idx.size() < folds || neg_idx.size() < folds) {
        throw Error("tune: need at least " + std::to_string(folds) +
                    " embedded samples per class for stratified " + std::to_string(folds) +
                    "-fold cross-validation");
    }

    // Stratified fold assignment: shuffle each class, deal round-robin.
    Rng rng(config.seed);
    rng.shuffle(pos_idx);
    rng.shuffle(neg_idx);
    std::vector<size_t> fold_of(samples.size(), 0);
    for (size_t i = 0; i < pos_idx.size(); ++i) fold_of[pos_idx[i]] = i % folds;
    for (size_t i = 0; i < neg_idx.size(); ++i) fold_of[neg_idx[i]] = i % folds;

    // One cell per (gamma, fold); cells are independent.
    const size_t n_cells = config.grid.size() * folds;
    std::vector<double> cell_f1(n_cells, 0.0);
    std::vector<std::string> cell_error(n_cells);
    parallel_for(n_cells, config.workers, [&](size_t begin, size_t end) {
        for (size_t cell = begin; cell < end; ++cell) {
            const double gamma = config.grid[cell / folds];
            const size_t fold = cell % folds;
            try {
                std::vector<double> raw(samples.size());
                double sum = 0.0;
                for (size_t i = 0; i < samples.size(); ++i) {
                    raw[i] = std::pow(inv_lambda[i], gamma);
                    sum += raw[i];
                }
                double mean = sum / static_cast<double>(samples.size());

                std::vector<LabeledSample> train;
                std::vector<const LabeledSample*> held;
                for (size_t i = 0; i < samples.size(); ++i) {
                    if (fold_of[i] == fold) {
                        held.push_back(&samples[i]);
                    } else {
                        LabeledSample s = samples[i];
                        s.weight = raw[i] / mean;
                        train.push_back(std::move(s));
                    }
                }
                LogRegModel model = train_weighted_logreg(train, config.l2, config.tol, config.max_iters);
                std::vector<Polarity> pred, gold;
                pred.reserve(held.size());
                gold.reserve(held.size());
                for (const LabeledSample* s : held) {
                    pred.push_back(predict(model, s->features).label);
                    gold.push_back(s->label);
                }
                cell_f1[cell] = score(pred, gold).macro_f1;
            } catch (const std::exception& e) {
                cell_error[cell] = e.what();
            }
        }
    });
    for (const auto& err : cell_error) {
        if (!err.empty()) throw Error("tune: " + err);
    }

    TuneResult result;
    result.grid = config.grid;
    result.seed = config.seed;
    result.mean_macro_f1.resize(config.grid.size());
    for (size_t g = 0; g < config.grid.size(); ++g) {
        double sum = 0.0;
        for (size_t f = 0; f < folds; ++f) sum += cell_f1[g * folds + f];
        result.mean_macro_f1[g] = sum / static_cast<double>(folds);
    }
    size_t best = 0;
    for (size_t g = 1; g < config.grid.size(); ++g) {
        if (result.mean_macro_f1[g] > result.mean_macro_f1[best] ||
            (result.mean_macro_f1[g] == result.mean_macro_f1[best] &&
             config.grid[g] < config.grid[best])) {
            best = g;
        }
    }
    result.best_gamma = config.grid[best];
    return result;
}

void save_model(const std::string& path, const LogRegModel& model) {
    std::string out;
    out += "lexidrift_logreg 1\n";
    out += "dim " + std::to_string(model.coefficients.size()) + "\n";
    out += "l2 " + fmt_g(model.l2_strength, 17) + "\n";
    out += "iterations " + std::to_string(model.iterations_run) + "\n";
    out += "objective " + fmt_g(model.final_objective, 17) + "\n";
    out += "intercept " + fmt_g(model.intercept, 17) + "\n";
    out += "coef";
    for (double c : model.coefficients) {
        out += ' ';
        out += fmt_g(c, 17);
    }
    out += '\n';
    write_text_file(path, out);
}

LogRegModel load_model(const std::string& path) {
    std::string text = read_text_file(path);
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    LogRegModel model;
    size_t dim = 0;
    bool saw_header = false, saw_dim = false, saw_intercept = false, saw_coef = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> tokens = split_whitespace(line);
        const std::string where = path + ":" + std::to_string(line_no);
        if (line_no == 1) {
            if (tokens.size() != 2 || tokens[0] != "lexidrift_logreg" || tokens[1] != "1") {
                throw Error(where + ": expected header `lexidrift_logreg 1`");
            }
            saw_header = true;
            continue;
        }
        if (tokens.size() < 2) throw Error(where + ": expected `key value`");
        const std::string& key = tokens[0];
        if (key == "dim") {
            dim = static_cast<size_t>(parse_int(tokens[1], where + ": dim"));
            saw_dim = true;
        } else if (key == "l2") {
            model.l2_strength = parse_double(tokens[1], where + ": l2");
        } else if (key == "iterations") {
            model.iterations_run = static_cast<int>(parse_int(tokens[1], where + ": iterations"));
        } else if (key == "objective") {
            model.final_objective = parse_double(tokens[1], where + ": objective");
        } else if (key == "intercept") {
            model.intercept = parse_double(tokens[1], where + ": intercept");
            saw_intercept = true;
        } else if (key == "coef") {
            for (size_t i = 1; i < tokens.size(); ++i) {
                model.coefficients.push_back(parse_double(tokens[i], where + ": coef"));
            }
            saw_coef = true;
        } else {
            throw Error(where + ": unknown field `" + key + "`");
        }
    }
    if (!saw_header || !saw_dim || !saw_intercept || !saw_coef) {
        throw Error(path + ": incomplete model file");
    }
    if (model.coefficients.size() != dim) {
        throw Error(path + ": dim says " + std::to_string(dim) + " but coef has " +
                    std::to_string(model.coefficients.size()) + " entries");
    }
    for (double c : model.coefficients) {
        if (!std::isfinite(c)) throw Error(path + ": non-finite coefficient");
    }
    if (!std::isfinite(model.intercept)) throw Error(path + ": non-finite intercept");
    return model;
}

}  // namespace lexidrift
