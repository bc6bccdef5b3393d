#include "lexidrift/align.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include "lexidrift/parallel.hpp"

namespace lexidrift {

const std::string TranslationTable::kNullWord = "<NULL>";

void AlignerConfig::validate() const {
    if (em_iterations < 1) throw Error("em_iterations must be >= 1");
    if (!(diagonal_tension >= 0.0) || !std::isfinite(diagonal_tension))
        throw Error("diagonal_tension must be finite and >= 0");
    if (!(prob_floor > 0.0) || prob_floor >= 1e-3)
        throw Error("prob_floor must be in (0, 1e-3)");
    if (workers < 1) throw Error("workers must be >= 1");
}

uint32_t TranslationTable::source_id(const std::string& word) const {
    auto it = src_index_.find(word);
    return it == src_index_.end() ? UINT32_MAX : it->second;
}

uint32_t TranslationTable::target_id(const std::string& word) const {
    auto it = tgt_index_.find(word);
    return it == tgt_index_.end() ? UINT32_MAX : it->second;
}

std::optional<double> TranslationTable::prob_ids(uint32_t source, uint32_t target) const {
    if (source >= src_words_.size() || target == UINT32_MAX) return std::nullopt;
    const auto begin = entry_tgt_.begin() + static_cast<ptrdiff_t>(row_begin_[source]);
    const auto end = entry_tgt_.begin() + static_cast<ptrdiff_t>(row_begin_[source + 1]);
    auto it = std::lower_bound(begin, end, target);
    if (it == end || *it != target) return std::nullopt;
    return entry_prob_[static_cast<size_t>(it - entry_tgt_.begin())];
}

std::optional<double> TranslationTable::prob(const std::string& source,
                                             const std::string& target) const {
    return prob_ids(source_id(source), target_id(target));
}

double TranslationTable::prob_or(const std::string& source, const std::string& target,
                                 double fallback) const {
    return prob(source, target).value_or(fallback);
}

double TranslationTable::row_sum(uint32_t source) const {
    double sum = 0.0;
    for (size_t k = row_begin_[source]; k < row_begin_[source + 1]; ++k) sum += entry_prob_[k];
    return sum;
}

namespace {

double diagonal_factor(double tension, size_t i, size_t src_len, size_t j, size_t tgt_len) {
    if (tension == 0.0) return 1.0;
    double di = static_cast<double>(i + 1) / static_cast<double>(src_len);
    double dj = static_cast<double>(j + 1) / static_cast<double>(tgt_len);
    return std::exp(-tension * std::abs(di - dj));
}

struct IdCorpus {
    std::vector<std::vector<uint32_t>> src;  // NULL id 0 not included in the lists
    std::vector<std::vector<uint32_t>> tgt;
};

}  // namespace

// Builds the table structure and runs EM over it; friend of TranslationTable.
class AlignerImpl {
public:
    static TrainResult run(const ParallelCorpus& corpus, const AlignerConfig& config,
                           const IterationObserver& on_iteration) {
        config.validate();
        if (corpus.pairs.empty()) throw Error("cannot train aligner on an empty corpus");

        TrainResult result;
        TranslationTable& table = result.table;
        IdCorpus ids = intern(corpus, table);
        build_structure(ids, table, config.use_null);

        const size_t n_pairs = ids.src.size();
        std::vector<double> counts(table.entry_prob_.size());
        // Per-pair contribution buffers are folded in pair order so results
        // do not depend on the worker count.
        for (int iter = 1; iter <= config.em_iterations; ++iter) {
            std::fill(counts.begin(), counts.end(), 0.0);
            std::vector<PairContribution> contrib(n_pairs);
            parallel_for(n_pairs, config.workers, [&](size_t begin, size_t end) {
                for (size_t p = begin; p < end; ++p)
                    contrib[p] = e_step_pair(table, ids, p, config);
            });
            double ll = 0.0;
            for (const PairContribution& c : contrib) {
                ll += c.log_likelihood;
                for (const auto& [entry, delta] : c.count_deltas) counts[entry] += delta;
            }
            result.iteration_log_likelihood.push_back(ll);
            m_step(table, counts);
            if (on_iteration) on_iteration(iter, table);
        }
        return result;
    }

private:
    struct PairContribution {
        std::vector<std::pair<size_t, double>> count_deltas;
        double log_likelihood = 0.0;
    };

    static IdCorpus intern(const ParallelCorpus& corpus, TranslationTable& table) {
        table.src_words_.push_back(TranslationTable::kNullWord);
        table.src_index_.emplace(TranslationTable::kNullWord, 0);
        auto src_id = [&table](const std::string& w) {
            auto [it, inserted] = table.src_index_.emplace(w, table.src_words_.size());
            if (inserted) table.src_words_.push_back(w);
            return it->second;
        };
        auto tgt_id = [&table](const std::string& w) {
            auto [it, inserted] = table.tgt_index_.emplace(w, table.tgt_words_.size());
            if (inserted) table.tgt_words_.push_back(w);
            return it->second;
        };
        IdCorpus ids;
        ids.src.reserve(corpus.pairs.size());
        ids.tgt.reserve(corpus.pairs.size());
        for (const VersePair& pair : corpus.pairs) {
            std::vector<uint32_t> s, t;
            s.reserve(pair.source_tokens.size());
            t.reserve(pair.target_tokens.size());
            for (const std::string& w : pair.source_tokens) s.push_back(src_id(w));
            for (const std::string& w : pair.target_tokens) t.push_back(tgt_id(w));
            ids.src.push_back(std::move(s));
            ids.tgt.push_back(std::move(t));
        }
        return ids;
    }

    static void build_structure(const IdCorpus& ids, TranslationTable& table, bool use_null) {
        std::vector<std::pair<uint32_t, uint32_t>> cooc;
        for (size_t p = 0; p < ids.src.size(); ++p) {
            for (uint32_t t : ids.tgt[p]) {
                if (use_null) cooc.emplace_back(0u, t);
                for (uint32_t s : ids.src[p]) cooc.emplace_back(s, t);
            }
        }
        std::sort(cooc.begin(), cooc.end());
        cooc.erase(std::unique(cooc.begin(), cooc.end()), cooc.end());

        const size_t n_src = table.src_words_.size();
        table.row_begin_.assign(n_src + 1, 0);
        for (const auto& [s, t] : cooc) ++table.row_begin_[s + 1];
        for (size_t s = 0; s < n_src; ++s) table.row_begin_[s + 1] += table.row_begin_[s];
        table.entry_tgt_.resize(cooc.size());
        table.entry_prob_.resize(cooc.size());
        size_t k = 0;
        for (const auto& [s, t] : cooc) table.entry_tgt_[k++] = t;
        // Uniform over each source word's co-occurring targets.
        for (size_t s = 0; s < n_src; ++s) {
            size_t deg = table.row_begin_[s + 1] - table.row_begin_[s];
            if (deg == 0) continue;
            double uniform = 1.0 / static_cast<double>(deg);
            for (size_t e = table.row_begin_[s]; e < table.row_begin_[s + 1]; ++e)
                table.entry_prob_[e] = uniform;
        }
    }

    static size_t entry_index(const TranslationTable& table, uint32_t s, uint32_t t) {
        const auto begin = table.entry_tgt_.begin() + static_cast<ptrdiff_t>(table.row_begin_[s]);
        const auto end = table.entry_tgt_.begin() + static_cast<ptrdiff_t>(table.row_begin_[s + 1]);
        auto it = std::lower_bound(begin, end, t);
        return static_cast<size_t>(it - table.entry_tgt_.begin());
    }

    static PairContribution e_step_pair(const TranslationTable& table, const IdCorpus& ids,
                                        size_t p, const AlignerConfig& config) {
        const std::vector<uint32_t>& src = ids.src[p];
        const std::vector<uint32_t>& tgt = ids.tgt[p];
        const size_t src_len = src.size();
        PairContribution out;
        out.count_deltas.reserve(tgt.size() * (src_len + 1));
        for (size_t j = 0; j < tgt.size(); ++j) {
            const uint32_t t = tgt[j];
            double z = 0.0;
            double prior_z = 0.0;
            if (config.use_null) {
                z += table.entry_prob_[entry_index(table, 0, t)];
                prior_z += 1.0;
            }
            for (size_t i = 0; i < src_len; ++i) {
                double factor = diagonal_factor(config.diagonal_tension, i, src_len, j, tgt.size());
                z += factor * table.entry_prob_[entry_index(table, src[i], t)];
                prior_z += factor;
            }
            out.log_likelihood += std::log(z / prior_z);
            if (config.use_null) {
                size_t e = entry_index(table, 0, t);
                out.count_deltas.emplace_back(e, table.entry_prob_[e] / z);
            }
            for (size_t i = 0; i < src_len; ++i) {
                double factor = diagonal_factor(config.diagonal_tension, i, src_len, j, tgt.size());
                size_t e = entry_index(table, src[i], t);
                out.count_deltas.emplace_back(e, factor * table.entry_prob_[e] / z);
            }
        }
        return out;
    }

    static void m_step(TranslationTable& table, const std::vector<double>& counts) {
        for (size_t s = 0; s + 1 < table.row_begin_.size(); ++s) {
            double total = 0.0;
            for (size_t e = table.row_begin_[s]; e < table.row_begin_[s + 1]; ++e)
                total += counts[e];
            if (total <= 0.0) continue;  // source word absent from this run (NULL with use_null off)
            for (size_t e = table.row_begin_[s]; e < table.row_begin_[s + 1]; ++e)
                table.entry_prob_[e] = counts[e] / total;
        }
    }
};

TrainResult train_aligner(const ParallelCorpus& corpus, const AlignerConfig& config,
                          const IterationObserver& on_iteration) {
    return AlignerImpl::run(corpus, config, on_iteration);
}

std::vector<AlignmentLink> viterbi_align(const TranslationTable& table,
                                         const ParallelCorpus& corpus,
                                         const AlignerConfig& config) {
    config.validate();
    std::vector<AlignmentLink> links;
    for (size_t p = 0; p < corpus.pairs.size(); ++p) {
        const VersePair& pair = corpus.pairs[p];
        const size_t src_len = pair.source_tokens.size();
        for (size_t j = 0; j < pair.target_tokens.size(); ++j) {
            const std::string& t = pair.target_tokens[j];
            int best_pos = 0;
            double best_score = -1.0;
            for (size_t i = 0; i < src_len; ++i) {
                double factor =
                    diagonal_factor(config.diagonal_tension, i, src_len, j, pair.target_tokens.size());
                double score = factor * table.prob_or(pair.source_tokens[i], t, config.prob_floor);
                if (score > best_score) {
                    best_score = score;
                    best_pos = static_cast<int>(i);
                }
            }
            if (config.use_null) {
                double score = table.prob_or(TranslationTable::kNullWord, t, config.prob_floor);
                if (score > best_score) best_pos = kNullSourcePos;
            }
            links.push_back({p, best_pos, static_cast<int>(j)});
        }
    }
    return links;
}

std::vector<AlignmentLink> load_pharaoh_alignments(const std::string& path,
                                                   const ParallelCorpus& corpus) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open alignment file: " + path);
    std::vector<AlignmentLink> links;
    std::string line;
    size_t pair_index = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (pair_index >= corpus.pairs.size())
            throw Error(path + ": more alignment lines than corpus pairs (" +
                        std::to_string(corpus.pairs.size()) + ")");
        const VersePair& pair = corpus.pairs[pair_index];
        for (const std::string& token : split_whitespace(line)) {
            const std::string where =
                path + ": pair " + std::to_string(pair_index) + ", link '" + token + "'";
            size_t dash = token.find('-');
            if (dash == std::string::npos || dash == 0 || dash + 1 == token.size())
                throw Error(where + ": expected `i-j`");
            int64_t i = parse_int(token.substr(0, dash), where);
            int64_t j = parse_int(token.substr(dash + 1), where);
            if (i < 0 || static_cast<size_t>(i) >= pair.source_tokens.size())
                throw Error(where + ": source index out of range (" +
                            std::to_string(pair.source_tokens.size()) + " tokens)");
            if (j < 0 || static_cast<size_t>(j) >= pair.target_tokens.size())
                throw Error(where + ": target index out of range (" +
                            std::to_string(pair.target_tokens.size()) + " tokens)");
            links.push_back({pair_index, static_cast<int>(i), static_cast<int>(j)});
        }
        ++pair_index;
    }
    if (pair_index != corpus.pairs.size())
        throw Error(path + ": " + std::to_string(pair_index) + " alignment lines for " +
                    std::to_string(corpus.pairs.size()) + " corpus pairs");
    return links;
}

void save_pharaoh_alignments(const std::string& path,
                             const std::vector<AlignmentLink>& links, size_t pair_count) {
    // NULL links have no Pharaoh representation and are omitted.
    std::vector<std::string> lines(pair_count);
    for (const AlignmentLink& link : links) {
        if (link.pair_index >= pair_count)
            throw Error("alignment link pair_index out of range");
        if (link.source_pos == kNullSourcePos) continue;
        std::string& line = lines[link.pair_index];
        if (!line.empty()) line += ' ';
        line += std::to_string(link.source_pos);
        line += '-';
        line += std::to_string(link.target_pos);
    }
    std::string out;
    for (const std::string& line : lines) {
        out += line;
        out += '\n';
    }
    write_text_file(path, out);
}

void save_translation_table(const std::string& path, const TranslationTable& table) {
    std::vector<std::tuple<const std::string*, const std::string*, double>> rows;
    rows.reserve(table.entry_count());
    table.for_each_entry([&](const std::string& src, const std::string& tgt, double prob) {
        rows.emplace_back(&src, &tgt, prob);
    });
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (*std::get<0>(a) != *std::get<0>(b)) return *std::get<0>(a) < *std::get<0>(b);
        return *std::get<1>(a) < *std::get<1>(b);
    });
    std::string out;
    for (const auto& [src, tgt, prob] : rows) {
        out += *src;
        out += '\t';
        out += *tgt;
        out += '\t';
        out += fmt_g(prob, 17);
        out += '\n';
    }
    write_text_file(path, out);
}

TranslationTable load_translation_table(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open translation table: " + path);
    TranslationTable table;
    table.src_words_.push_back(TranslationTable::kNullWord);
    table.src_index_.emplace(TranslationTable::kNullWord, 0);

    std::string line;
    size_t line_no = 0;
    std::vector<std::tuple<uint32_t, uint32_t, double>> entries;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::string where = path + ":" + std::to_string(line_no);
        std::vector<std::string> cols = split_char(line, '\t');
        if (cols.size() != 3) throw Error(where + ": expected `source<TAB>target<TAB>prob`");
        double prob = parse_double(cols[2], where);
        if (!(prob > 0.0) || prob > 1.0 + 1e-12)
            throw Error(where + ": probability out of (0,1]: " + cols[2]);
        auto [sit, s_new] = table.src_index_.emplace(cols[0], table.src_words_.size());
        if (s_new) table.src_words_.push_back(cols[0]);
        auto [tit, t_new] = table.tgt_index_.emplace(cols[1], table.tgt_words_.size());
        if (t_new) table.tgt_words_.push_back(cols[1]);
        entries.emplace_back(sit->second, tit->second, prob);
    }
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) {
                  return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                                          : std::get<1>(a) < std::get<1>(b);
              });
    for (size_t k = 1; k < entries.size(); ++k)
        if (std::get<0>(entries[k]) == std::get<0>(entries[k - 1]) &&
            std::get<1>(entries[k]) == std::get<1>(entries[k - 1]))
            throw Error(path + ": duplicate (source, target) entry '" +
                        table.src_words_[std::get<0>(entries[k])] + "', '" +
                        table.tgt_words_[std::get<1>(entries[k])] + "'");
    const size_t n_src = table.src_words_.size();
    table.row_begin_.assign(n_src + 1, 0);
    for (const auto& [s, t, prob] : entries) ++table.row_begin_[s + 1];
    for (size_t s = 0; s < n_src; ++s) table.row_begin_[s + 1] += table.row_begin_[s];
    table.entry_tgt_.reserve(entries.size());
    table.entry_prob_.reserve(entries.size());
    for (const auto& [s, t, prob] : entries) {
        table.entry_tgt_.push_back(t);
        table.entry_prob_.push_back(prob);
    }
    return table;
}

}  // namespace lexidrift
