// Synthetic data builders and scratch-dir helpers shared by the unit tests
// and the acceptance suite.
#pragma once

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "lexidrift/classify.hpp"
#include "lexidrift/common.hpp"
#include "lexidrift/embed.hpp"
#include "lexidrift/lexicon.hpp"
#include "lexidrift/rng.hpp"

namespace fixtures {

// Unique scratch directory, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& label) {
        static uint64_t counter = 0;
        dir_ = std::filesystem::temp_directory_path() /
               ("lexidrift_" + label + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string root() const { return dir_.string(); }

private:
    std::filesystem::path dir_;
};

inline std::string write(const TempDir& dir, const std::string& name, const std::string& content) {
    std::string path = dir.path(name);
    lexidrift::write_text_file(path, content);
    return path;
}

// ---- vector helpers --------------------------------------------------------

inline std::vector<double> random_vector(lexidrift::Rng& rng, size_t dim) {
    std::vector<double> v(dim);
    for (auto& x : v) x = rng.normal();
    return v;
}

inline double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Random vector orthogonal to `v`, scaled to the same norm (Gram-Schmidt).
inline std::vector<double> orthogonal_redraw(lexidrift::Rng& rng, const std::vector<double>& v) {
    const double vnorm = norm(v);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::vector<double> u = random_vector(rng, v.size());
        double dot = 0.0, vv = 0.0;
        for (size_t i = 0; i < v.size(); ++i) {
            dot += u[i] * v[i];
            vv += v[i] * v[i];
        }
        for (size_t i = 0; i < v.size(); ++i) u[i] -= dot / vv * v[i];
        double unorm = norm(u);
        if (unorm > 1e-9) {
            for (auto& x : u) x *= vnorm / unorm;
            return u;
        }
    }
    throw lexidrift::Error("orthogonal_redraw: degenerate input");
}

inline std::string embedding_line(const std::string& word, const std::vector<double>& vec) {
    std::string line = word;
    for (double x : vec) {
        line += ' ';
        line += lexidrift::fmt_g(x, 17);
    }
    line += '\n';
    return line;
}

inline lexidrift::EmbeddingSpace make_space(
    const std::vector<std::pair<std::string, std::vector<double>>>& words,
    const lexidrift::LangDomainTag& tag) {
    lexidrift::EmbeddingSpace space;
    space.tag = tag;
    space.dim = words.empty() ? 0 : words[0].second.size();
    for (const auto& [w, v] : words) space.vectors[w] = v;
    return space;
}

// ---- planted parallel corpus (label projection end to end) -----------------

struct PlantedFixture {
    std::string corpus_tsv;
    std::string seeds_tsv;
    std::string gold_tsv;
    std::string src_emb_txt;  // target-language embeddings, source domain
    std::string tgt_emb_txt;  // target-language embeddings, target domain
    std::vector<std::pair<std::string, lexidrift::Polarity>> planted;  // target words
};

// Each verse carries exactly one sentiment-bearing source word (a seed) whose
// bijective translation is the planted target word; fillers are bijective
// noise shared by both polarities. Embeddings cluster planted words by
// polarity in both domains, so the induced lexicon is learnable downstream.
inline PlantedFixture make_planted_fixture(uint64_t seed, size_t verses = 500,
                                           size_t planted_count = 40, size_t filler_count = 30,
                                           size_t dim = 12) {
    using lexidrift::Polarity;
    lexidrift::Rng rng(seed);
    PlantedFixture fx;

    std::vector<std::string> src_words, tgt_words;
    for (size_t k = 0; k < planted_count; ++k) {
        bool pos = k < planted_count / 2;
        std::string s = (pos ? "spos" : "sneg") + std::to_string(k);
        std::string t = (pos ? "tpos" : "tneg") + std::to_string(k);
        src_words.push_back(s);
        tgt_words.push_back(t);
        fx.planted.emplace_back(t, pos ? Polarity::Positive : Polarity::Negative);
        fx.seeds_tsv += s + "\t" + (pos ? "POS" : "NEG") + "\n";
        fx.gold_tsv += t + "\t" + (pos ? "POS" : "NEG") + "\n";
    }

    for (size_t v = 0; v < verses; ++v) {
        size_t k = v % planted_count;
        std::string src = src_words[k];
        std::string tgt = tgt_words[k];
        for (int f = 0; f < 3; ++f) {
            size_t idx = static_cast<size_t>(rng.below(filler_count));
            src += " fsrc" + std::to_string(idx);
            tgt += " ftgt" + std::to_string(idx);
        }
        fx.corpus_tsv += "v" + std::to_string(v) + "\t" + src + "\t" + tgt + "\n";
    }

    // Clustered geometry along a random unit axis; re-drawn noise per domain
    // keeps drift low but nonzero.
    std::vector<double> axis = random_vector(rng, dim);
    double an = norm(axis);
    for (auto& x : axis) x /= an;
    auto cluster_point = [&](double center, double sigma) {
        std::vector<double> v(dim);
        for (size_t d = 0; d < dim; ++d) v[d] = center * axis[d] + sigma * rng.normal();
        return v;
    };
    for (const auto& [word, polarity] : fx.planted) {
        double c = polarity == Polarity::Positive ? 2.0 : -2.0;
        fx.src_emb_txt += embedding_line(word, cluster_point(c, 0.25));
        fx.tgt_emb_txt += embedding_line(word, cluster_point(c, 0.25));
    }
    for (size_t f = 0; f < filler_count; ++f) {
        std::string w = "ftgt" + std::to_string(f);
        fx.src_emb_txt += embedding_line(w, cluster_point(0.0, 1.0));
        fx.tgt_emb_txt += embedding_line(w, cluster_point(0.0, 1.0));
    }
    return fx;
}

// Words in tight clusters around random unit centers; the structure makes
// word profiles strongly non-uniform, so one orthogonally re-drawn vector
// restructures its own profile far more than it perturbs anyone else's.
inline std::vector<std::pair<std::string, std::vector<double>>> make_clustered_words(
    lexidrift::Rng& rng, size_t n_words, size_t dim, size_t n_clusters, double sigma) {
    std::vector<std::vector<double>> centers;
    for (size_t c = 0; c < n_clusters; ++c) {
        std::vector<double> v = random_vector(rng, dim);
        double n = norm(v);
        for (auto& x : v) x /= n;
        centers.push_back(std::move(v));
    }
    std::vector<std::pair<std::string, std::vector<double>>> words;
    for (size_t i = 0; i < n_words; ++i) {
        std::vector<double> v = centers[i % n_clusters];
        for (auto& x : v) x += sigma * rng.normal();
        words.emplace_back("w" + std::to_string(i), std::move(v));
    }
    return words;
}

// ---- planted label noise with high-drift markers (weighting benefit) -------

struct NoiseTrial {
    lexidrift::SeedLexicon seeds;         // 10% of labels flipped vs. geometry
    lexidrift::EmbeddingSpace src_space;  // flipped words drift between spaces
    lexidrift::EmbeddingSpace tgt_space;
    std::vector<lexidrift::LabeledSample> test;  // clean held-out words
};

// Seeds live in two Gaussian clusters of the target space. The flipped seeds
// keep their source-domain geometry but sit deep inside the opposite target
// cluster, so (a) their target-domain label is wrong and (b) their profile
// divergence lambda is large. Down-weighting them should recover the clean
// boundary; training them at full weight drags it into the test clusters.
inline NoiseTrial make_noise_trial(uint64_t seed, size_t clean_per_class = 30,
                                   size_t flipped_per_class = 3, size_t test_per_class = 20,
                                   size_t dim = 8, double sep = 1.0, double sigma = 0.55,
                                   double leverage = 4.0) {
    using lexidrift::LabeledSample;
    using lexidrift::Polarity;
    lexidrift::Rng rng(seed);
    NoiseTrial trial;
    trial.seeds.tag = lexidrift::LangDomainTag("tgt", "induced");

    std::vector<std::pair<std::string, std::vector<double>>> src, tgt;
    auto point = [&](double center, double s) {
        std::vector<double> v(dim);
        v[0] = center + s * rng.normal();
        for (size_t d = 1; d < dim; ++d) v[d] = s * rng.normal();
        return v;
    };
    auto jitter = [&](std::vector<double> v) {
        for (auto& x : v) x += 1e-3 * rng.normal();
        return v;
    };

    for (size_t i = 0; i < 2 * clean_per_class; ++i) {
        bool pos = i < clean_per_class;
        std::string w = "seed" + std::to_string(i);
        std::vector<double> v = point(pos ? sep : -sep, sigma);
        tgt.emplace_back(w, v);
        src.emplace_back(w, jitter(v));
        trial.seeds.entries[w] = {pos ? Polarity::Positive : Polarity::Negative, 1.0};
    }
    for (size_t i = 0; i < 2 * flipped_per_class; ++i) {
        bool pos_label = i < flipped_per_class;  // label says one cluster...
        std::string w = "flip" + std::to_string(i);
        double geom = pos_label ? -sep * leverage : sep * leverage;  // ...geometry the other
        std::vector<double> tv = point(geom, sigma * 0.5);
        tgt.emplace_back(w, tv);
        src.emplace_back(w, point(pos_label ? sep : -sep, sigma));  // un-drifted source view
        trial.seeds.entries[w] = {pos_label ? Polarity::Positive : Polarity::Negative, 1.0};
    }
    for (size_t i = 0; i < 2 * test_per_class; ++i) {
        bool pos = i < test_per_class;
        std::string w = "test" + std::to_string(i);
        std::vector<double> v = point(pos ? sep : -sep, sigma);
        tgt.emplace_back(w, v);
        src.emplace_back(w, jitter(v));
        LabeledSample s;
        s.word = w;
        s.features = v;
        s.label = pos ? Polarity::Positive : Polarity::Negative;
        trial.test.push_back(std::move(s));
    }

    trial.src_space = make_space(src, lexidrift::LangDomainTag("tgt", "source"));
    trial.tgt_space = make_space(tgt, lexidrift::LangDomainTag("tgt", "target"));
    return trial;
}

// ---- planted evaluation world (splits + condition ordering) ----------------

struct EvalWorld {
    lexidrift::SeedLexicon unisent;  // words a*/c*; half the a* labels are noisy
    lexidrift::SeedLexicon gold;     // words b*/c*; labels always match geometry
    lexidrift::EmbeddingSpace emb;   // everything, plus one out-of-lexicon pad
};

// Words separate along dimension 0: positive geometry near +1, negative near
// -1. Ten of the twenty positive-geometry unisent-only words carry flipped
// NEG labels, which drags a classifier trained on induced labels toward the
// positive side; six shared words sit just past the clean boundary at +0.35
// where the dragged boundary misclassifies them while a gold-trained one does
// not. Hence, on the gold-labeled test sample: manual-train >= unisent-train
// >= majority baseline in macro-F1, with wide margins.
inline EvalWorld make_eval_world(uint64_t seed) {
    using lexidrift::Polarity;
    lexidrift::Rng rng(seed);
    EvalWorld w;
    w.unisent.tag = lexidrift::LangDomainTag("tgt", "induced");
    w.gold.tag = lexidrift::LangDomainTag("tgt", "gold");
    w.emb.tag = lexidrift::LangDomainTag("tgt", "news");
    const size_t dim = 6;
    w.emb.dim = dim;
    auto point = [&](double center, double s) {
        std::vector<double> v(dim);
        v[0] = center + s * rng.normal();
        for (size_t d = 1; d < dim; ++d) v[d] = s * rng.normal();
        return v;
    };
    for (size_t i = 0; i < 40; ++i) {  // A: unisent-only
        bool pos = i < 20;
        std::string word = "a" + std::to_string(i);
        w.emb.vectors[word] = point(pos ? 1.0 : -1.0, 0.25);
        bool flipped = pos && i < 10;
        w.unisent.entries[word] = {(pos && !flipped) ? Polarity::Positive : Polarity::Negative,
                                   1.0};
    }
    for (size_t i = 0; i < 10; ++i) {  // B: gold-only
        bool pos = i < 5;
        std::string word = "b" + std::to_string(i);
        w.emb.vectors[word] = point(pos ? 1.1 : -1.1, 0.25);
        w.gold.entries[word] = {pos ? Polarity::Positive : Polarity::Negative, 1.0};
    }
    for (size_t i = 0; i < 20; ++i) {  // C: in both, labels clean everywhere
        bool pos = i < 10;
        std::string word = "c" + std::to_string(i);
        bool band = pos && i < 6;
        w.emb.vectors[word] = point(band ? 0.35 : (pos ? 1.1 : -1.1), band ? 0.08 : 0.25);
        Polarity p = pos ? Polarity::Positive : Polarity::Negative;
        w.unisent.entries[word] = {p, 1.0};
        w.gold.entries[word] = {p, 1.0};
    }
    w.emb.vectors["pad0"] = point(0.0, 2.0);
    return w;
}

}  // namespace fixtures
