#include "lexidrift/eval.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "lexidrift/parallel.hpp"
#include "lexidrift/rng.hpp"

#include "json.hpp"

namespace lexidrift {

void SplitConfig::validate() const {
    if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
        throw Error("test_fraction must be in (0, 1)");
    }
    if (!(size_match_tolerance >= 0.0) || !std::isfinite(size_match_tolerance)) {
        throw Error("size_match_tolerance must be a finite real >= 0");
    }
}

namespace {

// Seeded down-sample of `items` to `target` elements, order preserved.
void downsample(std::vector<LabeledWord>& items, size_t target, Rng& rng, size_t& removed) {
    if (items.size() <= target) return;
    removed += items.size() - target;
    std::vector<size_t> keep = rng.sample_indices(items.size(), target);
    std::sort(keep.begin(), keep.end());
    std::vector<LabeledWord> kept;
    kept.reserve(target);
    for (size_t i : keep) kept.push_back(std::move(items[i]));
    items.swap(kept);
}

}  // namespace

SplitSpec split_datasets(const SeedLexicon& unisent, const SeedLexicon& gold,
                         const std::vector<std::string>& emb_vocab, const SplitConfig& config) {
    config.validate();
    if (unisent.entries.empty()) throw Error("split: empty induced lexicon");
    if (gold.entries.empty()) throw Error("split: empty gold lexicon");
    if (emb_vocab.empty()) throw Error("split: empty embedding vocabulary");

    std::set<std::string> emb(emb_vocab.begin(), emb_vocab.end());

    SplitSpec split;
    split.rng_seed = config.seed;
    for (const auto& [word, entry] : unisent.entries) {
        (void)entry;
        if (!emb.count(word)) continue;
        if (gold.contains(word)) {
            split.set_c.push_back(word);
        } else {
            split.set_a.push_back(word);
        }
    }
    for (const auto& [word, entry] : gold.entries) {
        (void)entry;
        if (emb.count(word) && !unisent.contains(word)) split.set_b.push_back(word);
    }
    if (split.set_c.empty()) {
        throw Error("split: induced lexicon, gold lexicon and embedding vocabulary share no word");
    }

    // Test words: seeded uniform sample from B ∪ C, gold-labeled.
    std::vector<std::string> b_union_c;
    b_union_c.reserve(split.set_b.size() + split.set_c.size());
    b_union_c.insert(b_union_c.end(), split.set_b.begin(), split.set_b.end());
    b_union_c.insert(b_union_c.end(), split.set_c.begin(), split.set_c.end());
    std::sort(b_union_c.begin(), b_union_c.end());

    size_t test_n = static_cast<size_t>(std::floor(config.test_fraction *
                                                   static_cast<double>(b_union_c.size()) + 0.5));
    if (test_n == 0) throw Error("split: test sample is empty; raise test_fraction");

    Rng rng(config.seed);
    std::vector<size_t> picks = rng.sample_indices(b_union_c.size(), test_n);
    std::sort(picks.begin(), picks.end());
    std::set<std::string> test_words;
    for (size_t i : picks) test_words.insert(b_union_c[i]);
    for (const auto& word : b_union_c) {
        Polarity label = gold.entries.at(word).polarity;
        if (test_words.count(word)) {
            split.test.push_back(LabeledWord{word, label});
        } else {
            split.manual_train.push_back(LabeledWord{word, label});
        }
    }
    for (const auto& word : split.set_a) {
        split.unisent_train.push_back(LabeledWord{word, unisent.entries.at(word).polarity});
    }
    for (const auto& word : split.set_c) {
        if (!test_words.count(word)) {
            split.unisent_train.push_back(LabeledWord{word, unisent.entries.at(word).polarity});
        }
    }
    std::sort(split.unisent_train.begin(), split.unisent_train.end(),
              [](const LabeledWord& a, const LabeledWord& b) { return a.word < b.word; });

    // Match train-set sizes within tolerance by down-sampling the larger.
    size_t nu = split.unisent_train.size();
    size_t nm = split.manual_train.size();
    size_t hi = std::max(nu, nm), lo = std::min(nu, nm);
    if (hi > 0 && static_cast<double>(hi - lo) > config.size_match_tolerance * static_cast<double>(hi)) {
        if (nu > nm) {
            downsample(split.unisent_train, lo, rng, split.downsampled_words);
        } else {
            downsample(split.manual_train, lo, rng, split.downsampled_words);
        }
    }
    return split;
}

SplitSpec split_datasets(const SeedLexicon& unisent, const SeedLexicon& gold,
                         const EmbeddingSpace& embedding, const SplitConfig& config) {
    std::vector<std::string> vocab;
    vocab.reserve(embedding.vectors.size());
    for (const auto& [word, vec] : embedding.vectors) {
        (void)vec;
        vocab.push_back(word);
    }
    std::sort(vocab.begin(), vocab.end());
    return split_datasets(unisent, gold, vocab, config);
}

Polarity majority_baseline(const std::vector<Polarity>& train_labels) {
    if (train_labels.empty()) throw Error("majority_baseline: empty label list");
    size_t pos = 0;
    for (Polarity p : train_labels) {
        if (p == Polarity::Positive) ++pos;
    }
    return 2 * pos >= train_labels.size() ? Polarity::Positive : Polarity::Negative;
}

void EvalConfig::validate() const {
    if (!(l2 >= 0.0) || !std::isfinite(l2)) throw Error("eval: l2 must be a finite real >= 0");
    if (!(tol > 0.0)) throw Error("eval: tol must be > 0");
    if (max_iters < 1) throw Error("eval: max_iters must be >= 1");
    if (workers < 1) throw Error("eval: workers must be >= 1");
}

namespace {

struct UsableSet {
    std::vector<LabeledSample> samples;  // unit weights
    size_t dropped = 0;
};

UsableSet resolve(const std::vector<LabeledWord>& words, const EmbeddingSpace& emb) {
    UsableSet out;
    for (const auto& lw : words) {
        const std::vector<double>* vec = emb.find(lw.word);
        if (!vec) {
            ++out.dropped;
            continue;
        }
        LabeledSample s;
        s.word = lw.word;
        s.features = *vec;
        s.label = lw.label;
        out.samples.push_back(std::move(s));
    }
    return out;
}

std::vector<LabeledSample> apply_drift_weights(std::vector<LabeledSample> samples,
                                               const DriftTable& drift) {
    for (auto& s : samples) {
        const DriftEntry* e = drift.find(s.word);
        s.weight = e ? e->sample_weight : 1.0;
    }
    return samples;
}

// Shared driver: given per-condition train sets, score each condition on the
// identical test set. `train_sets[i].first` names the condition; baseline is
// condition 0 and predicts the majority label of its "train" labels.
std::vector<EvalReport> run_conditions(
    const std::vector<std::pair<std::string, const std::vector<LabeledSample>*>>& conditions,
    const std::vector<size_t>& dropped_train, const UsableSet& test,
    const EmbeddingSpace& embedding, const EvalConfig& config, uint64_t seed_echo) {
    if (test.samples.empty()) throw Error("eval: no usable test word is present in the embedding");

    std::vector<Polarity> gold;
    gold.reserve(test.samples.size());
    for (const auto& s : test.samples) gold.push_back(s.label);

    std::vector<EvalReport> reports(conditions.size());
    std::vector<std::string> errors(conditions.size());
    parallel_for(conditions.size(), config.workers, [&](size_t begin, size_t end) {
        for (size_t c = begin; c < end; ++c) {
            try {
                const auto& [name, train] = conditions[c];
                std::vector<Polarity> pred;
                pred.reserve(test.samples.size());
                if (name == "baseline") {
                    std::vector<Polarity> labels;
                    labels.reserve(train->size());
                    for (const auto& s : *train) labels.push_back(s.label);
                    Polarity majority = majority_baseline(labels);
                    pred.assign(test.samples.size(), majority);
                } else {
                    LogRegModel model =
                        train_weighted_logreg(*train, config.l2, config.tol, config.max_iters);
                    for (const auto& s : test.samples) pred.push_back(predict(model, s.features).label);
                }
                EvalReport r;
                r.language = embedding.tag.language;
                r.domain = embedding.tag.domain;
                r.seed_source = name;
                r.n_train = train->size();
                r.n_test = test.samples.size();
                r.dropped_train = dropped_train[c];
                r.dropped_test = test.dropped;
                r.scores = score(pred, gold);
                r.l2 = config.l2;
                r.tol = config.tol;
                r.max_iters = config.max_iters;
                r.seed = seed_echo;
                reports[c] = std::move(r);
            } catch (const std::exception& e) {
                errors[c] = e.what();
            }
        }
    });
    for (size_t c = 0; c < errors.size(); ++c) {
        if (!errors[c].empty()) {
            throw Error("eval condition `" + conditions[c].first + "`: " + errors[c]);
        }
    }
    return reports;
}

}  // namespace

std::vector<EvalReport> evaluate_word_sentiment(const SplitSpec& split,
                                                const EmbeddingSpace& embedding,
                                                const DriftTable* drift, const EvalConfig& config) {
    config.validate();
    UsableSet manual = resolve(split.manual_train, embedding);
    UsableSet unisent = resolve(split.unisent_train, embedding);
    UsableSet test = resolve(split.test, embedding);

    std::vector<LabeledSample> weighted;
    std::vector<std::pair<std::string, const std::vector<LabeledSample>*>> conditions = {
        {"baseline", &manual.samples},
        {"manual", &manual.samples},
        {"unisent", &unisent.samples},
    };
    std::vector<size_t> dropped_train = {manual.dropped, manual.dropped, unisent.dropped};
    if (drift) {
        weighted = apply_drift_weights(unisent.samples, *drift);
        conditions.emplace_back("unisent_weighted", &weighted);
        dropped_train.push_back(unisent.dropped);
    }
    return run_conditions(conditions, dropped_train, test, embedding, config, split.rng_seed);
}

std::vector<EvalReport> evaluate_emoticons(const SeedLexicon& unisent, const DriftTable* drift,
                                           const EmbeddingSpace& twitter_emb,
                                           const SeedLexicon& emoticon_gold,
                                           const EvalConfig& config) {
    config.validate();
    if (emoticon_gold.entries.empty()) throw Error("eval: empty emoticon lexicon");

    UsableSet test;
    for (const auto& [word, entry] : emoticon_gold.entries) {
        const std::vector<double>* vec = twitter_emb.find(word);
        if (!vec) {
            ++test.dropped;
            continue;
        }
        LabeledSample s;
        s.word = word;
        s.features = *vec;
        s.label = entry.polarity;
        test.samples.push_back(std::move(s));
    }
    if (test.samples.empty()) throw Error("eval: no emoticon is present in the embedding");

    // Train on unisent seeds; gold emoticons never enter the train set.
    UsableSet train;
    for (const auto& [word, entry] : unisent.entries) {
        if (emoticon_gold.contains(word)) continue;
        const std::vector<double>* vec = twitter_emb.find(word);
        if (!vec) {
            ++train.dropped;
            continue;
        }
        LabeledSample s;
        s.word = word;
        s.features = *vec;
        s.label = entry.polarity;
        train.samples.push_back(std::move(s));
    }

    std::vector<LabeledSample> weighted;
    std::vector<std::pair<std::string, const std::vector<LabeledSample>*>> conditions = {
        {"baseline", &train.samples},
        {"unisent", &train.samples},
    };
    std::vector<size_t> dropped_train = {train.dropped, train.dropped};
    if (drift) {
        weighted = apply_drift_weights(train.samples, *drift);
        conditions.emplace_back("unisent_weighted", &weighted);
        dropped_train.push_back(train.dropped);
    }
    return run_conditions(conditions, dropped_train, test, twitter_emb, config, config.seed);
}

void save_eval_reports(const std::string& json_path, const std::string& tsv_path,
                       const std::vector<EvalReport>& reports) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    std::string tsv;
    for (const auto& r : reports) {
        nlohmann::ordered_json obj;
        obj["language"] = r.language;
        obj["domain"] = r.domain;
        obj["seed_source"] = r.seed_source;
        obj["n_train"] = r.n_train;
        obj["n_test"] = r.n_test;
        obj["dropped_train_words"] = r.dropped_train;
        obj["dropped_test_words"] = r.dropped_test;
        obj["accuracy"] = r.scores.accuracy;
        obj["macro_f1"] = r.scores.macro_f1;
        obj["positive"] = {{"precision", r.scores.positive.precision},
                           {"recall", r.scores.positive.recall},
                           {"f1", r.scores.positive.f1}};
        obj["negative"] = {{"precision", r.scores.negative.precision},
                           {"recall", r.scores.negative.recall},
                           {"f1", r.scores.negative.f1}};
        obj["config"] = {{"l2", r.l2}, {"tol", r.tol}, {"max_iters", r.max_iters}, {"seed", r.seed}};
        arr.push_back(std::move(obj));

        tsv += r.seed_source;
        tsv += '\t';
        tsv += fmt_g(r.scores.accuracy, 9);
        tsv += '\t';
        tsv += fmt_g(r.scores.macro_f1, 9);
        tsv += '\n';
    }
    write_text_file(json_path, arr.dump(2) + "\n");
    write_text_file(tsv_path, tsv);
}

}  // namespace lexidrift
