#include "lexidrift/metrics.hpp"

namespace lexidrift {

namespace {

double ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

ClassMetrics class_metrics(double tp, double fp, double fn) {
    ClassMetrics m;
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    m.f1 = ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
    return m;
}

}  // namespace

Scores score(const std::vector<Polarity>& predictions, const std::vector<Polarity>& gold) {
    if (predictions.size() != gold.size()) {
        throw Error("score: predictions and gold have different lengths");
    }
    if (predictions.empty()) {
        throw Error("score: empty input");
    }
    double tp = 0, fp = 0, fn = 0, tn = 0;
    for (size_t i = 0; i < predictions.size(); ++i) {
        bool pred_pos = predictions[i] == Polarity::Positive;
        bool gold_pos = gold[i] == Polarity::Positive;
        if (pred_pos && gold_pos) ++tp;
        else if (pred_pos && !gold_pos) ++fp;
        else if (!pred_pos && gold_pos) ++fn;
        else ++tn;
    }
    Scores s;
    s.n = predictions.size();
    s.accuracy = (tp + tn) / static_cast<double>(s.n);
    s.positive = class_metrics(tp, fp, fn);
    s.negative = class_metrics(tn, fn, fp);
    s.macro_f1 = (s.positive.f1 + s.negative.f1) / 2.0;
    return s;
}

}  // namespace lexidrift
