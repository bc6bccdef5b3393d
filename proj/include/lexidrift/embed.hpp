#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexidrift/common.hpp"
#include "lexidrift/corpus.hpp"
#include "lexidrift/lexicon.hpp"

namespace lexidrift {

// One (language, domain) embedding space. Vectors are dense doubles so that
// positive rescaling stays exact to well below the cosine tolerances used
// downstream.
struct EmbeddingSpace {
    LangDomainTag tag;
    size_t dim = 0;
    std::unordered_map<std::string, std::vector<double>> vectors;
    size_t duplicates_dropped = 0;
    size_t zero_vectors_dropped = 0;

    bool contains(const std::string& word) const { return vectors.count(word) > 0; }
    const std::vector<double>* find(const std::string& word) const;
};

// word2vec text format: optional `count dim` header, then one
// `word v1 ... v_dim` line per word. Duplicate words keep the first
// occurrence; zero vectors are dropped; both are counted, not errors.
EmbeddingSpace load_embeddings(const std::string& path, const LangDomainTag& tag);

// Lexicographically ordered intersection of two spaces' vocabularies. With a
// cap, the intersection is first restricted to the cap most frequent words
// of the supplied table (ties broken by word); the cap requires a table.
struct SharedVocab {
    std::vector<std::string> words;  // ascending
    size_t size() const { return words.size(); }
};

SharedVocab shared_vocab(const EmbeddingSpace& source, const EmbeddingSpace& target);
SharedVocab shared_vocab(const EmbeddingSpace& source, const EmbeddingSpace& target,
                         size_t cap, const Vocabulary& frequencies);

struct WordProfile {
    std::string word;
    LangDomainTag tag;
    std::vector<double> probs;  // over SharedVocab order, sums to 1
};

// L1-normalized cosine-distance profile of `word` against the shared
// vocabulary. The word itself contributes zero mass; if every reference is
// parallel to the word the profile degenerates to uniform over the others.
WordProfile word_profile(const EmbeddingSpace& space, const std::string& word,
                         const SharedVocab& shared);

// KL(source || target) in nats after flooring both profiles at epsilon and
// renormalizing.
double domdrift_score(const WordProfile& p_source, const WordProfile& p_target, double epsilon);

struct DriftConfig {
    double gamma = 1.0;           // weight exponent; 0 yields unit weights exactly
    double epsilon = 1e-10;       // profile smoothing floor
    double lambda_floor = 1e-6;   // caps the inverse-drift weight
    std::optional<size_t> cap;    // shared-vocabulary size cap
    int workers = 1;

    void validate() const;
};

struct DriftEntry {
    double lambda = 0.0;
    double sample_weight = 1.0;
};

struct DriftTable {
    std::map<std::string, DriftEntry> entries;  // ascending by word
    std::vector<std::string> skipped_words;     // lexicon words missing from a space
    double gamma = 1.0;
    double lambda_floor = 1e-6;

    const DriftEntry* find(const std::string& word) const;
};

// Per-word drift lambda over the shared vocabulary plus inverse-drift sample
// weights (1/max(lambda, floor))^gamma, normalized to mean 1 over the table.
DriftTable compute_drift_table(const SeedLexicon& lexicon, const EmbeddingSpace& source,
                               const EmbeddingSpace& target, const DriftConfig& config,
                               const Vocabulary* frequencies = nullptr);

// Same lambdas, weights recomputed as (1/max(lambda, floor))^gamma and
// mean-1 normalized. Used after exponent tuning.
DriftTable reweight_drift_table(const DriftTable& table, double gamma, double lambda_floor);

// TSV `word<TAB>lambda<TAB>sample_weight`, 9 significant digits, word-sorted.
void save_drift_table(const std::string& path, const DriftTable& table);
DriftTable load_drift_table(const std::string& path);

struct Neighbor {
    std::string word;
    double similarity = 0.0;
};

struct DriftReport {
    std::string word;
    std::vector<Neighbor> source_neighbors;  // descending similarity
    std::vector<Neighbor> target_neighbors;
};

// Top-k cosine neighbors of a word in each space, for qualitative
// inspection of a drift. k is truncated to vocabulary size - 1.
DriftReport drift_report(const std::string& word, const EmbeddingSpace& source,
                         const EmbeddingSpace& target, size_t k);

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace lexidrift
