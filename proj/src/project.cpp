#include "lexidrift/project.hpp"

#include <array>

namespace lexidrift {

void AssociationTable::add_event(const std::string& target_word, Polarity label) {
    auto& row = counts_[target_word];
    ++row[static_cast<size_t>(label)];
    if (label == Polarity::Positive)
        ++total_positive_;
    else
        ++total_negative_;
}

AssociationTable::Cells AssociationTable::cells(const std::string& target_word,
                                                Polarity label) const {
    auto it = counts_.find(target_word);
    int64_t with_label = 0, with_other = 0;
    if (it != counts_.end()) {
        with_label = it->second[static_cast<size_t>(label)];
        with_other = it->second[static_cast<size_t>(label) ^ 1];
    }
    const int64_t label_total = label == Polarity::Positive ? total_positive_ : total_negative_;
    const int64_t other_total = label == Polarity::Positive ? total_negative_ : total_positive_;
    Cells cells;
    cells.a = with_label;
    cells.b = with_other;
    cells.c = label_total - with_label;
    cells.d = other_total - with_other;
    return cells;
}

AssociationTable substitute_and_count(const std::vector<AlignmentLink>& links,
                                      const ParallelCorpus& corpus,
                                      const SeedLexicon& seeds) {
    AssociationTable table;
    for (const AlignmentLink& link : links) {
        if (link.source_pos == kNullSourcePos) continue;
        if (link.pair_index >= corpus.pairs.size())
            throw Error("alignment link references pair " + std::to_string(link.pair_index) +
                        " outside the corpus");
        const VersePair& pair = corpus.pairs[link.pair_index];
        if (link.source_pos < 0 || static_cast<size_t>(link.source_pos) >= pair.source_tokens.size() ||
            link.target_pos < 0 || static_cast<size_t>(link.target_pos) >= pair.target_tokens.size())
            throw Error("alignment link out of token range in pair '" + pair.verse_id + "'");
        auto it = seeds.entries.find(pair.source_tokens[static_cast<size_t>(link.source_pos)]);
        if (it == seeds.entries.end()) continue;
        table.add_event(pair.target_tokens[static_cast<size_t>(link.target_pos)],
                        it->second.polarity);
    }
    if (table.total_events() == 0)
        throw Error("no seed coverage: no alignment link carries a labeled source word");
    return table;
}

std::vector<SeedCandidate> score_candidates(const AssociationTable& table) {
    std::vector<SeedCandidate> candidates;
    candidates.reserve(table.word_counts().size() * 2);
    const double total = static_cast<double>(table.total_events());
    for (const auto& [word, row] : table.word_counts()) {
        for (Polarity polarity : {Polarity::Positive, Polarity::Negative}) {
            const AssociationTable::Cells cells = table.cells(word, polarity);
            const auto [stat, p] = chi2_two_sided(cells.a, cells.b, cells.c, cells.d);
            SeedCandidate cand;
            cand.word = word;
            cand.polarity = polarity;
            cand.chi2_stat = stat;
            cand.p_value = p;
            const double expected_a =
                static_cast<double>(cells.a + cells.b) * static_cast<double>(cells.a + cells.c) / total;
            cand.direction = static_cast<double>(cells.a) > expected_a ? +1 : -1;
            candidates.push_back(std::move(cand));
        }
    }
    return candidates;
}

SeedLexicon extract_lexicon(const AssociationTable& table, double q, const LangDomainTag& tag) {
    std::vector<SeedCandidate> candidates = score_candidates(table);
    std::vector<double> p_values;
    p_values.reserve(candidates.size());
    for (const SeedCandidate& cand : candidates) p_values.push_back(cand.p_value);
    const std::vector<bool> flags = benjamini_hochberg(p_values, q);
    for (size_t i = 0; i < candidates.size(); ++i) candidates[i].significant = flags[i];

    SeedLexicon lexicon;
    lexicon.tag = tag;
    // Candidates arrive word-grouped (Positive then Negative per word).
    for (size_t i = 0; i < candidates.size(); i += 2) {
        const SeedCandidate& pos = candidates[i];
        const SeedCandidate& neg = candidates[i + 1];
        const bool keep_pos = pos.significant && pos.direction == +1;
        const bool keep_neg = neg.significant && neg.direction == +1;
        if (!keep_pos && !keep_neg) continue;
        Polarity polarity;
        if (keep_pos && keep_neg) {
            if (pos.chi2_stat == neg.chi2_stat) continue;  // contradictory tie: drop the word
            polarity = pos.chi2_stat > neg.chi2_stat ? Polarity::Positive : Polarity::Negative;
        } else {
            polarity = keep_pos ? Polarity::Positive : Polarity::Negative;
        }
        lexicon.entries.emplace(pos.word, SeedEntry{polarity, 1.0});
    }
    return lexicon;
}

}  // namespace lexidrift
