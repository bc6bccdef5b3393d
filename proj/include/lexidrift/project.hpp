#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lexidrift/align.hpp"
#include "lexidrift/corpus.hpp"
#include "lexidrift/lexicon.hpp"
#include "lexidrift/stats.hpp"

namespace lexidrift {

// 2x2 association counts between target words and projected sentiment
// labels. The counting unit is one alignment-link event: a link whose source
// token carries a seed label contributes (target_word, polarity) once.
class AssociationTable {
public:
    struct Cells {
        int64_t a = 0;  // word present, label present
        int64_t b = 0;  // word present, label absent
        int64_t c = 0;  // word absent, label present
        int64_t d = 0;  // word absent, label absent
    };

    void add_event(const std::string& target_word, Polarity label);

    Cells cells(const std::string& target_word, Polarity label) const;
    int64_t total_events() const { return total_positive_ + total_negative_; }

    // Words with at least one labeled event, ascending.
    const std::map<std::string, std::array<int64_t, 2>>& word_counts() const { return counts_; }

private:
    std::map<std::string, std::array<int64_t, 2>> counts_;  // [Positive, Negative] per word
    int64_t total_positive_ = 0;
    int64_t total_negative_ = 0;
};

// Replaces aligned source tokens by their seed polarity and tallies the
// resulting (target_word, label) events. NULL-source links and links whose
// source token is not a seed are ignored. Zero labeled events is an error.
AssociationTable substitute_and_count(const std::vector<AlignmentLink>& links,
                                      const ParallelCorpus& corpus,
                                      const SeedLexicon& seeds);

struct SeedCandidate {
    std::string word;
    Polarity polarity = Polarity::Positive;
    double chi2_stat = 0.0;
    double p_value = 1.0;
    int direction = -1;  // +1 when the observed a-cell exceeds its expectation
    bool significant = false;
};

// Scores every (word, polarity) row of the table: chi-squared statistic,
// p-value and direction. Rows are ordered by word, Positive before Negative.
std::vector<SeedCandidate> score_candidates(const AssociationTable& table);

// chi-squared + joint BH-FDR + direction filtering; a word surviving for
// both polarities keeps the larger statistic (exact tie drops the word).
// Output entries carry weight 1.0.
SeedLexicon extract_lexicon(const AssociationTable& table, double q, const LangDomainTag& tag);

}  // namespace lexidrift
