#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexidrift/classify.hpp"
#include "lexidrift/common.hpp"
#include "lexidrift/embed.hpp"
#include "lexidrift/lexicon.hpp"
#include "lexidrift/metrics.hpp"

namespace lexidrift {

struct LabeledWord {
    std::string word;
    Polarity label = Polarity::Positive;
};

// The induced lexicon (unisent), the gold lexicon and the embedding
// vocabulary partition into A = (unisent ∩ emb) \ C, B = (gold ∩ emb) \ C and
// C = unisent ∩ gold ∩ emb. The test set is sampled from B ∪ C with gold
// labels; unisent_train = (A ∪ C) \ test carries unisent labels and
// manual_train = (B ∪ C) \ test carries gold labels.
struct SplitSpec {
    std::vector<std::string> set_a;  // sorted
    std::vector<std::string> set_b;
    std::vector<std::string> set_c;
    std::vector<LabeledWord> unisent_train;  // sorted by word
    std::vector<LabeledWord> manual_train;
    std::vector<LabeledWord> test;
    uint64_t rng_seed = 0;
    size_t downsampled_words = 0;  // removed by train-size matching
};

struct SplitConfig {
    double test_fraction = 0.2;
    uint64_t seed = 42;
    // If the two train sets differ in size by more than this fraction of the
    // larger one, the larger is down-sampled (seeded) to the smaller's size.
    double size_match_tolerance = 0.05;

    void validate() const;
};

SplitSpec split_datasets(const SeedLexicon& unisent, const SeedLexicon& gold,
                         const std::vector<std::string>& emb_vocab, const SplitConfig& config);
SplitSpec split_datasets(const SeedLexicon& unisent, const SeedLexicon& gold,
                         const EmbeddingSpace& embedding, const SplitConfig& config);

// Most frequent label; exact tie -> POSITIVE. Empty input is an error.
Polarity majority_baseline(const std::vector<Polarity>& train_labels);

struct EvalConfig {
    double l2 = 1.0;
    double tol = 1e-6;
    int max_iters = 1000;
    int workers = 1;
    uint64_t seed = 42;  // echoed into reports; word-eval reports echo the split seed instead

    void validate() const;
};

struct EvalReport {
    std::string language;
    std::string domain;
    std::string seed_source;  // baseline | manual | unisent | unisent_weighted
    size_t n_train = 0;
    size_t n_test = 0;
    size_t dropped_train = 0;  // train words absent from the embedding
    size_t dropped_test = 0;   // test words absent from the embedding
    Scores scores;
    double l2 = 1.0;  // config echo
    double tol = 1e-6;
    int max_iters = 1000;
    uint64_t seed = 0;
};

// One report per condition, all scored on the identical usable test set:
// baseline (majority of the gold-labeled train set), manual (gold-labeled
// train), unisent (induced train), and, when a drift table is supplied,
// unisent_weighted (induced train with drift sample weights; words missing
// from the table weigh 1).
std::vector<EvalReport> evaluate_word_sentiment(const SplitSpec& split,
                                                const EmbeddingSpace& embedding,
                                                const DriftTable* drift, const EvalConfig& config);

// Train on every usable unisent seed (gold emoticons excluded from training),
// test on the gold-labeled emoticon vectors of the target-domain embedding.
// Conditions: baseline (majority of the train labels), unisent, and
// unisent_weighted when a drift table is supplied.
std::vector<EvalReport> evaluate_emoticons(const SeedLexicon& unisent, const DriftTable* drift,
                                           const EmbeddingSpace& twitter_emb,
                                           const SeedLexicon& emoticon_gold,
                                           const EvalConfig& config);

// JSON array with one object per condition, plus a flat TSV summary
// `condition<TAB>acc<TAB>macro_f1`.
void save_eval_reports(const std::string& json_path, const std::string& tsv_path,
                       const std::vector<EvalReport>& reports);

}  // namespace lexidrift
