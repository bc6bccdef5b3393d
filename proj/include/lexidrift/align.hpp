#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexidrift/corpus.hpp"

namespace lexidrift {

struct AlignerConfig {
    int em_iterations = 5;
    double diagonal_tension = 0.0;  // 0 disables the diagonal prior
    bool use_null = true;
    double prob_floor = 1e-9;       // fallback for unseen pairs at decode time
    int workers = 1;

    void validate() const;
};

// Lexical translation probabilities t(target|source), one distinguished NULL
// source word included. Rows are stored CSR-style per source id with target
// ids ascending, which fixes every summation order in training.
class TranslationTable {
public:
    static const std::string kNullWord;  // "<NULL>", always source id 0

    uint32_t source_id(const std::string& word) const;      // UINT32_MAX if absent
    uint32_t target_id(const std::string& word) const;
    std::optional<double> prob(const std::string& source, const std::string& target) const;
    std::optional<double> prob_ids(uint32_t source, uint32_t target) const;
    double prob_or(const std::string& source, const std::string& target, double fallback) const;

    size_t source_vocab_size() const { return src_words_.size(); }
    size_t entry_count() const { return entry_tgt_.size(); }
    // Sum of the probabilities present for one source word (1.0 after training).
    double row_sum(uint32_t source) const;

    template <typename Fn>  // fn(source_word, target_word, prob)
    void for_each_entry(Fn&& fn) const {
        for (size_t s = 0; s + 1 < row_begin_.size(); ++s)
            for (size_t e = row_begin_[s]; e < row_begin_[s + 1]; ++e)
                fn(src_words_[s], tgt_words_[entry_tgt_[e]], entry_prob_[e]);
    }

    const std::vector<std::string>& source_words() const { return src_words_; }
    const std::vector<std::string>& target_words() const { return tgt_words_; }

private:
    std::vector<std::string> src_words_;
    std::vector<std::string> tgt_words_;
    std::unordered_map<std::string, uint32_t> src_index_;
    std::unordered_map<std::string, uint32_t> tgt_index_;
    std::vector<size_t> row_begin_;      // src_words_.size() + 1 offsets
    std::vector<uint32_t> entry_tgt_;
    std::vector<double> entry_prob_;

    friend class AlignerImpl;
    friend TranslationTable load_translation_table(const std::string& path);
};

constexpr int kNullSourcePos = -1;

struct AlignmentLink {
    size_t pair_index = 0;
    int source_pos = 0;  // kNullSourcePos when the target word aligns to NULL
    int target_pos = 0;
};

struct TrainResult {
    TranslationTable table;
    // Corpus log-likelihood under the table entering each EM iteration
    // (diagonal prior included, normalized per target position); EM makes
    // this sequence non-decreasing.
    std::vector<double> iteration_log_likelihood;
};

using IterationObserver = std::function<void(int iteration, const TranslationTable& table)>;

// Runs exactly config.em_iterations EM iterations from the per-source
// uniform initialization over co-occurring target words. With
// diagonal_tension > 0, expected counts for source position i and target
// position j are weighted by exp(-tension * |(i+1)/I - (j+1)/J|); the NULL
// word carries weight 1. Deterministic for a given corpus+config, and
// bit-identical for any worker count.
TrainResult train_aligner(const ParallelCorpus& corpus, const AlignerConfig& config,
                          const IterationObserver& on_iteration = {});

// Links every target position to the argmax source position (and NULL when
// enabled) under t * diagonal factor; unseen pairs fall back to prob_floor.
// Ties keep the smallest source index; NULL wins only when strictly larger.
std::vector<AlignmentLink> viterbi_align(const TranslationTable& table,
                                         const ParallelCorpus& corpus,
                                         const AlignerConfig& config);

// Pharaoh format: one line per corpus pair of space-separated `i-j` tokens
// (0-indexed, source-target); a blank line means no links for that pair.
std::vector<AlignmentLink> load_pharaoh_alignments(const std::string& path,
                                                   const ParallelCorpus& corpus);
void save_pharaoh_alignments(const std::string& path,
                             const std::vector<AlignmentLink>& links, size_t pair_count);

// TSV `source<TAB>target<TAB>prob`, lexicographically sorted, 17 significant
// digits so save/load round-trips exactly.
void save_translation_table(const std::string& path, const TranslationTable& table);
TranslationTable load_translation_table(const std::string& path);

}  // namespace lexidrift
