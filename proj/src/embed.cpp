#include "lexidrift/embed.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lexidrift/parallel.hpp"

namespace lexidrift {

const std::vector<double>* EmbeddingSpace::find(const std::string& word) const {
    auto it = vectors.find(word);
    return it == vectors.end() ? nullptr : &it->second;
}

namespace {

bool is_count_header(const std::vector<std::string>& tokens) {
    if (tokens.size() != 2) return false;
    for (const auto& tok : tokens) {
        if (tok.empty()) return false;
        for (char c : tok) {
            if (c < '0' || c > '9') return false;
        }
    }
    return true;
}

}  // namespace

EmbeddingSpace load_embeddings(const std::string& path, const LangDomainTag& tag) {
    std::string text = read_text_file(path);
    EmbeddingSpace space;
    space.tag = tag;

    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::vector<std::string> tokens = split_whitespace(line);
        if (tokens.empty()) continue;

        if (first_content_line) {
            first_content_line = false;
            if (is_count_header(tokens)) {
                space.dim = static_cast<size_t>(parse_int(tokens[1], path + ":" + std::to_string(line_no) + ": header dim"));
                if (space.dim < 1) {
                    throw Error(path + ":" + std::to_string(line_no) + ": header dim must be >= 1");
                }
                continue;
            }
        }

        if (tokens.size() < 2) {
            throw Error(path + ":" + std::to_string(line_no) + ": expected `word v1 ... v_dim`");
        }
        const std::string& word = tokens[0];
        std::vector<double> vec;
        vec.reserve(tokens.size() - 1);
        bool all_zero = true;
        for (size_t i = 1; i < tokens.size(); ++i) {
            double v = parse_double(tokens[i], path + ":" + std::to_string(line_no) + ": vector component");
            if (!std::isfinite(v)) {
                throw Error(path + ":" + std::to_string(line_no) + ": non-finite vector component");
            }
            if (v != 0.0) all_zero = false;
            vec.push_back(v);
        }
        if (space.dim == 0) {
            space.dim = vec.size();
        } else if (vec.size() != space.dim) {
            throw Error(path + ":" + std::to_string(line_no) + ": expected " + std::to_string(space.dim) +
                        " components, got " + std::to_string(vec.size()));
        }
        if (all_zero) {
            ++space.zero_vectors_dropped;
            continue;
        }
        if (!space.vectors.emplace(word, std::move(vec)).second) {
            ++space.duplicates_dropped;
        }
    }
    if (space.vectors.empty()) {
        throw Error(path + ": no embedding vectors");
    }
    return space;
}

SharedVocab shared_vocab(const EmbeddingSpace& source, const EmbeddingSpace& target) {
    SharedVocab shared;
    const auto& smaller = source.vectors.size() <= target.vectors.size() ? source : target;
    const auto& larger = source.vectors.size() <= target.vectors.size() ? target : source;
    for (const auto& [word, vec] : smaller.vectors) {
        (void)vec;
        if (larger.contains(word)) shared.words.push_back(word);
    }
    std::sort(shared.words.begin(), shared.words.end());
    if (shared.words.empty()) {
        throw Error("embedding spaces share no vocabulary");
    }
    return shared;
}

SharedVocab shared_vocab(const EmbeddingSpace& source, const EmbeddingSpace& target,
                         size_t cap, const Vocabulary& frequencies) {
    if (cap < 1) throw Error("shared vocabulary cap must be >= 1");
    SharedVocab shared = shared_vocab(source, target);
    if (shared.words.size() <= cap) return shared;
    std::stable_sort(shared.words.begin(), shared.words.end(),
                     [&frequencies](const std::string& a, const std::string& b) {
                         uint64_t ca = frequencies.count_of(a);
                         uint64_t cb = frequencies.count_of(b);
                         if (ca != cb) return ca > cb;
                         return a < b;
                     });
    shared.words.resize(cap);
    std::sort(shared.words.begin(), shared.words.end());
    return shared;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw Error("cosine: dimension mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

// Reference vectors/norms of the shared vocabulary resolved once per space.
struct ProfileContext {
    std::vector<const std::vector<double>*> refs;
    std::vector<double> norms;
};

ProfileContext make_context(const EmbeddingSpace& space, const SharedVocab& shared) {
    ProfileContext ctx;
    ctx.refs.reserve(shared.words.size());
    ctx.norms.reserve(shared.words.size());
    for (const auto& word : shared.words) {
        const std::vector<double>* vec = space.find(word);
        if (!vec) throw Error("shared vocabulary word `" + word + "` missing from space " + space.tag.str());
        double n = 0.0;
        for (double v : *vec) n += v * v;
        ctx.refs.push_back(vec);
        ctx.norms.push_back(std::sqrt(n));
    }
    return ctx;
}

std::vector<double> profile_probs(const std::string& word, const std::vector<double>& vec,
                                  const SharedVocab& shared, const ProfileContext& ctx) {
    double wnorm = 0.0;
    for (double v : vec) wnorm += v * v;
    wnorm = std::sqrt(wnorm);

    const size_t n = shared.words.size();
    std::vector<double> dist(n, 0.0);
    double denom = 0.0;
    size_t self_index = n;
    for (size_t i = 0; i < n; ++i) {
        if (shared.words[i] == word) {
            self_index = i;
            continue;  // 1 - cos(w, w) = 0 exactly
        }
        double dot = 0.0;
        const std::vector<double>& r = *ctx.refs[i];
        for (size_t d = 0; d < vec.size(); ++d) dot += vec[d] * r[d];
        double cos = dot / (wnorm * ctx.norms[i]);
        dist[i] = 1.0 - cos;
        denom += dist[i];
    }
    if (denom <= 0.0) {
        // All references parallel to the word: uniform over the others.
        size_t others = n - (self_index < n ? 1 : 0);
        if (others == 0) throw Error("word profile for `" + word + "` has no reference words");
        double u = 1.0 / static_cast<double>(others);
        for (size_t i = 0; i < n; ++i) dist[i] = (i == self_index) ? 0.0 : u;
        return dist;
    }
    for (size_t i = 0; i < n; ++i) dist[i] /= denom;
    return dist;
}

}  // namespace

WordProfile word_profile(const EmbeddingSpace& space, const std::string& word,
                         const SharedVocab& shared) {
    if (shared.words.size() < 2) throw Error("shared vocabulary must have at least 2 words");
    const std::vector<double>* vec = space.find(word);
    if (!vec) throw Error("word `" + word + "` not in embedding space " + space.tag.str());
    ProfileContext ctx = make_context(space, shared);
    WordProfile profile;
    profile.word = word;
    profile.tag = space.tag;
    profile.probs = profile_probs(word, *vec, shared, ctx);
    return profile;
}

double domdrift_score(const WordProfile& p_source, const WordProfile& p_target, double epsilon) {
    if (p_source.probs.size() != p_target.probs.size()) {
        throw Error("domdrift: profile length mismatch");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw Error("domdrift: epsilon must be a positive finite real");
    }
    const size_t n = p_source.probs.size();
    double psum = 0.0, qsum = 0.0;
    std::vector<double> p(n), q(n);
    for (size_t i = 0; i < n; ++i) {
        p[i] = std::max(p_source.probs[i], epsilon);
        q[i] = std::max(p_target.probs[i], epsilon);
        psum += p[i];
        qsum += q[i];
    }
    double kl = 0.0;
    for (size_t i = 0; i < n; ++i) {
        double pi = p[i] / psum;
        double qi = q[i] / qsum;
        kl += pi * std::log(pi / qi);
    }
    return kl;
}

void DriftConfig::validate() const {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw Error("gamma must be a finite real >= 0");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw Error("epsilon must be a finite real > 0");
    if (!(lambda_floor > 0.0) || !std::isfinite(lambda_floor)) {
        throw Error("lambda_floor must be a finite real > 0");
    }
    if (cap && *cap < 1) throw Error("shared vocabulary cap must be >= 1");
    if (workers < 1) throw Error("workers must be >= 1");
}

const DriftEntry* DriftTable::find(const std::string& word) const {
    auto it = entries.find(word);
    return it == entries.end() ? nullptr : &it->second;
}

DriftTable compute_drift_table(const SeedLexicon& lexicon, const EmbeddingSpace& source,
                               const EmbeddingSpace& target, const DriftConfig& config,
                               const Vocabulary* frequencies) {
    config.validate();
    if (config.cap && !frequencies) {
        throw Error("shared vocabulary cap requires a frequency table");
    }
    SharedVocab shared = config.cap ? shared_vocab(source, target, *config.cap, *frequencies)
                                    : shared_vocab(source, target);
    if (shared.words.size() < 2) throw Error("shared vocabulary must have at least 2 words");

    DriftTable table;
    table.gamma = config.gamma;
    table.lambda_floor = config.lambda_floor;

    std::vector<std::string> words;  // lexicon order is already lexicographic
    for (const auto& [word, entry] : lexicon.entries) {
        (void)entry;
        if (source.contains(word) && target.contains(word)) {
            words.push_back(word);
        } else {
            table.skipped_words.push_back(word);
        }
    }
    if (words.empty()) {
        throw Error("no lexicon word is present in both embedding spaces");
    }

    ProfileContext src_ctx = make_context(source, shared);
    ProfileContext tgt_ctx = make_context(target, shared);

    std::vector<double> lambdas(words.size(), 0.0);
    parallel_for(words.size(), config.workers, [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            const std::string& w = words[i];
            WordProfile ps, pt;
            ps.probs = profile_probs(w, *source.find(w), shared, src_ctx);
            pt.probs = profile_probs(w, *target.find(w), shared, tgt_ctx);
            lambdas[i] = domdrift_score(ps, pt, config.epsilon);
        }
    });

    std::vector<double> weights(words.size(), 1.0);
    double sum = 0.0;
    for (size_t i = 0; i < words.size(); ++i) {
        weights[i] = std::pow(1.0 / std::max(lambdas[i], config.lambda_floor), config.gamma);
        sum += weights[i];
    }
    double mean = sum / static_cast<double>(words.size());
    for (size_t i = 0; i < words.size(); ++i) {
        table.entries[words[i]] = DriftEntry{lambdas[i], weights[i] / mean};
    }
    return table;
}

DriftTable reweight_drift_table(const DriftTable& table, double gamma, double lambda_floor) {
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw Error("gamma must be a finite real >= 0");
    if (!(lambda_floor > 0.0) || !std::isfinite(lambda_floor)) {
        throw Error("lambda_floor must be a finite real > 0");
    }
    if (table.entries.empty()) throw Error("empty drift table");
    DriftTable out;
    out.skipped_words = table.skipped_words;
    out.gamma = gamma;
    out.lambda_floor = lambda_floor;
    double sum = 0.0;
    for (const auto& [word, entry] : table.entries) {
        (void)word;
        sum += std::pow(1.0 / std::max(entry.lambda, lambda_floor), gamma);
    }
    double mean = sum / static_cast<double>(table.entries.size());
    for (const auto& [word, entry] : table.entries) {
        double w = std::pow(1.0 / std::max(entry.lambda, lambda_floor), gamma);
        out.entries[word] = DriftEntry{entry.lambda, w / mean};
    }
    return out;
}

void save_drift_table(const std::string& path, const DriftTable& table) {
    std::string out;
    for (const auto& [word, entry] : table.entries) {
        out += word;
        out += '\t';
        out += fmt_g(entry.lambda, 9);
        out += '\t';
        out += fmt_g(entry.sample_weight, 9);
        out += '\n';
    }
    write_text_file(path, out);
}

DriftTable load_drift_table(const std::string& path) {
    std::string text = read_text_file(path);
    DriftTable table;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cols = split_char(line, '\t');
        if (cols.size() != 3) {
            throw Error(path + ":" + std::to_string(line_no) + ": expected `word<TAB>lambda<TAB>sample_weight`");
        }
        double lambda = parse_double(cols[1], path + ":" + std::to_string(line_no) + ": lambda");
        double weight = parse_double(cols[2], path + ":" + std::to_string(line_no) + ": sample_weight");
        if (!std::isfinite(lambda) || lambda < 0.0) {
            throw Error(path + ":" + std::to_string(line_no) + ": lambda must be a finite real >= 0");
        }
        if (!std::isfinite(weight) || weight <= 0.0) {
            throw Error(path + ":" + std::to_string(line_no) + ": sample_weight must be a finite real > 0");
        }
        if (!table.entries.emplace(cols[0], DriftEntry{lambda, weight}).second) {
            throw Error(path + ":" + std::to_string(line_no) + ": duplicate word `" + cols[0] + "`");
        }
    }
    if (table.entries.empty()) {
        throw Error(path + ": empty drift table");
    }
    return table;
}

DriftReport drift_report(const std::string& word, const EmbeddingSpace& source,
                         const EmbeddingSpace& target, size_t k) {
    auto neighbors = [&](const EmbeddingSpace& space) {
        const std::vector<double>* vec = space.find(word);
        if (!vec) throw Error("word `" + word + "` not in embedding space " + space.tag.str());
        std::vector<Neighbor> out;
        out.reserve(space.vectors.size());
        for (const auto& [other, ovec] : space.vectors) {
            if (other == word) continue;
            out.push_back(Neighbor{other, cosine_similarity(*vec, ovec)});
        }
        std::sort(out.begin(), out.end(), [](const Neighbor& a, const Neighbor& b) {
            if (a.similarity != b.similarity) return a.similarity > b.similarity;
            return a.word < b.word;
        });
        if (out.size() > k) out.resize(k);
        return out;
    };
    DriftReport report;
    report.word = word;
    report.source_neighbors = neighbors(source);
    report.target_neighbors = neighbors(target);
    return report;
}

}  // namespace lexidrift
