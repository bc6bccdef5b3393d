#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexidrift/common.hpp"

namespace lexidrift {

// Deterministic tokenization settings. Identical input text always yields
// the identical token list for a given policy.
struct TokenizationPolicy {
    bool lowercase = true;
    bool strip_punctuation = true;
    size_t min_token_length = 1;  // measured in code points
};

// Whitespace-split, then per token: lowercase (optional), strip leading and
// trailing punctuation (optional; internal hyphens/apostrophes survive),
// drop tokens shorter than min_token_length. Empty output is legal.
std::vector<std::string> tokenize(std::string_view text, const TokenizationPolicy& policy);

struct VersePair {
    std::string verse_id;
    std::vector<std::string> source_tokens;
    std::vector<std::string> target_tokens;
};

struct ParallelCorpus {
    LangDomainTag source_tag;
    LangDomainTag target_tag;
    std::vector<VersePair> pairs;
    TokenizationPolicy policy;
    // Non-empty input lines whose source or target side tokenized to nothing.
    size_t dropped_pairs = 0;
};

// Loads a 3-column TSV (verse_id \t source_text \t target_text, UTF-8, no
// header). Verses where either side tokenizes to empty are dropped and
// counted. Malformed lines, duplicate verse ids and files that yield no
// usable pair are errors.
ParallelCorpus load_parallel_corpus(const std::string& path,
                                    const LangDomainTag& source_tag,
                                    const LangDomainTag& target_tag,
                                    const TokenizationPolicy& policy);

enum class CorpusSide { Source, Target };

struct Vocabulary {
    LangDomainTag tag;
    std::unordered_map<std::string, uint64_t> entries;
    uint64_t total_tokens = 0;

    uint64_t count_of(const std::string& word) const {
        auto it = entries.find(word);
        return it == entries.end() ? 0 : it->second;
    }
};

Vocabulary build_vocab(const ParallelCorpus& corpus, CorpusSide side);

// Frequency table TSV (`word \t count`), e.g. from `lexidrift corpus stats`.
void save_vocab(const std::string& path, const Vocabulary& vocab);
Vocabulary load_vocab(const std::string& path, const LangDomainTag& tag);

}  // namespace lexidrift
