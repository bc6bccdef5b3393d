#pragma once

#include <map>
#include <string>

#include "lexidrift/common.hpp"

namespace lexidrift {

struct SeedEntry {
    Polarity polarity = Polarity::Positive;
    double weight = 1.0;  // finite, > 0
};

// Word -> polarity lexicon with optional per-word confidence weights. Used
// both for the hand-built projection source (e.g. English) and for every
// induced target-language lexicon.
struct SeedLexicon {
    LangDomainTag tag;
    std::map<std::string, SeedEntry> entries;  // keyed ascending for stable output

    bool contains(const std::string& word) const { return entries.count(word) > 0; }
    size_t size() const { return entries.size(); }
    size_t count(Polarity p) const;
};

// TSV `word<TAB>POS|NEG[<TAB>weight]`; the weight column is optional on
// input and always written on output. Output is sorted by word.
SeedLexicon load_lexicon(const std::string& path, const LangDomainTag& tag);
void save_lexicon(const std::string& path, const SeedLexicon& lexicon);
std::string lexicon_to_tsv(const SeedLexicon& lexicon);

}  // namespace lexidrift
