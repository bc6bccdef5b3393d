#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "lexidrift/embed.hpp"
#include "lexidrift/rng.hpp"
#include "oracles.hpp"

using namespace lexidrift;

namespace {

const LangDomainTag kSrcTag("spa", "bible");
const LangDomainTag kTgtTag("spa", "twitter");

EmbeddingSpace space_of(const std::vector<std::pair<std::string, std::vector<double>>>& words,
                        const LangDomainTag& tag = kSrcTag) {
    return fixtures::make_space(words, tag);
}

SeedLexicon lexicon_of(const std::vector<std::string>& words) {
    SeedLexicon lex;
    lex.tag = LangDomainTag("spa", "induced");
    for (size_t i = 0; i < words.size(); ++i)
        lex.entries[words[i]] = {i % 2 ? Polarity::Negative : Polarity::Positive, 1.0};
    return lex;
}

std::map<std::string, std::vector<double>> to_oracle(const EmbeddingSpace& space) {
    return {space.vectors.begin(), space.vectors.end()};
}

}  // namespace

TEST_CASE("embedding loader handles header, no-header and counters") {
    fixtures::TempDir dir("emb_load");

    SUBCASE("header form") {
        EmbeddingSpace s = load_embeddings(
            fixtures::write(dir, "h.vec", "2 3\na 1 0 0\nb 0 1 0\n"), kSrcTag);
        CHECK(s.dim == 3);
        CHECK(s.vectors.size() == 2);
        CHECK(s.contains("a"));
        REQUIRE(s.find("b"));
        CHECK((*s.find("b"))[1] == 1.0);
    }
    SUBCASE("headerless form infers dim from the first vector") {
        EmbeddingSpace s =
            load_embeddings(fixtures::write(dir, "n.vec", "a 1 0\nb 0 1\n"), kSrcTag);
        CHECK(s.dim == 2);
        CHECK(s.vectors.size() == 2);
    }
    SUBCASE("dimension mismatch names the line") {
        std::string p = fixtures::write(dir, "bad.vec", "2 3\na 1 0 0\nc 1 2\n");
        try {
            load_embeddings(p, kSrcTag);
            FAIL("expected error");
        } catch (const Error& e) {
            CHECK(std::string(e.what()).find(":3") != std::string::npos);
        }
    }
    SUBCASE("non-numeric and non-finite components error") {
        CHECK_THROWS_AS(load_embeddings(fixtures::write(dir, "x.vec", "a 1 zz\n"), kSrcTag), Error);
        CHECK_THROWS_AS(load_embeddings(fixtures::write(dir, "y.vec", "a 1 inf\n"), kSrcTag), Error);
        CHECK_THROWS_AS(load_embeddings(fixtures::write(dir, "z.vec", "a 1 nan\n"), kSrcTag), Error);
    }
    SUBCASE("duplicates keep the first occurrence; zero vectors dropped; both counted") {
        EmbeddingSpace s = load_embeddings(
            fixtures::write(dir, "d.vec", "a 1 0\na 0 1\nz 0 0\nb 2 2\n"), kSrcTag);
        CHECK(s.vectors.size() == 2);
        CHECK((*s.find("a"))[0] == 1.0);  // first kept
        CHECK(s.duplicates_dropped == 1);
        CHECK(s.zero_vectors_dropped == 1);
        CHECK(!s.contains("z"));
    }
    SUBCASE("empty or unusable files error") {
        CHECK_THROWS_AS(load_embeddings(fixtures::write(dir, "e.vec", ""), kSrcTag), Error);
        CHECK_THROWS_AS(load_embeddings(fixtures::write(dir, "o.vec", "z 0 0\n"), kSrcTag), Error);
        CHECK_THROWS_AS(load_embeddings(dir.path("missing.vec"), kSrcTag), Error);
    }
}

TEST_CASE("shared vocabulary: intersection, cap, errors") {
    EmbeddingSpace s1 = space_of({{"a", {1, 0}}, {"b", {0, 1}}, {"c", {1, 1}}});
    EmbeddingSpace s2 = space_of({{"b", {1, 0}}, {"c", {0, 1}}, {"d", {1, 1}}}, kTgtTag);

    SharedVocab sv = shared_vocab(s1, s2);
    CHECK(sv.words == std::vector<std::string>{"b", "c"});

    EmbeddingSpace disjoint = space_of({{"zz", {1, 0}}}, kTgtTag);
    CHECK_THROWS_AS(shared_vocab(s1, disjoint), Error);

    SUBCASE("cap keeps the most frequent words, ties by word") {
        Vocabulary freq;
        freq.tag = kSrcTag;
        freq.entries = {{"b", 5}, {"c", 9}};
        SharedVocab capped = shared_vocab(s1, s2, 1, freq);
        CHECK(capped.words == std::vector<std::string>{"c"});

        freq.entries = {{"b", 5}, {"c", 5}};  // tie -> lexicographically smaller kept
        SharedVocab tied = shared_vocab(s1, s2, 1, freq);
        CHECK(tied.words == std::vector<std::string>{"b"});

        SharedVocab uncapped = shared_vocab(s1, s2, 10, freq);
        CHECK(uncapped.words == std::vector<std::string>{"b", "c"});
    }
}

TEST_CASE("word profile hand cases") {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    EmbeddingSpace space = space_of(
        {{"w", {1, 0}}, {"a", {0, 1}}, {"b", {inv_sqrt2, inv_sqrt2}}});
    SharedVocab shared;
    shared.words = {"a", "b"};

    WordProfile prof = word_profile(space, "w", shared);
    REQUIRE(prof.probs.size() == 2);
    // distances [1, 1-1/sqrt(2)] -> profile [0.7735, 0.2265]
    CHECK(prof.probs[0] == doctest::Approx(0.7734590803390136).epsilon(1e-12));
    CHECK(prof.probs[1] == doctest::Approx(0.22654091966098647).epsilon(1e-12));
    CHECK(prof.probs[0] + prof.probs[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(prof.word == "w");

    // agreement with the independent profile oracle
    auto oracle = oracles::profile(to_oracle(space), "w", shared.words);
    for (size_t i = 0; i < 2; ++i) CHECK(prof.probs[i] == doctest::Approx(oracle[i]).epsilon(1e-12));
}

TEST_CASE("profile symmetry, self-mass and degenerate fallback") {
    SUBCASE("two orthogonal references split mass evenly") {
        EmbeddingSpace space =
            space_of({{"w", {1, 0, 0}}, {"a", {0, 1, 0}}, {"b", {0, 0, 1}}});
        SharedVocab shared;
        shared.words = {"a", "b"};
        WordProfile prof = word_profile(space, "w", shared);
        CHECK(prof.probs[0] == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(prof.probs[1] == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("the word itself carries exactly zero mass") {
        EmbeddingSpace space = space_of({{"w", {1, 0}}, {"a", {0, 1}}, {"b", {1, 1}}});
        SharedVocab shared;
        shared.words = {"a", "b", "w"};
        WordProfile prof = word_profile(space, "w", shared);
        CHECK(prof.probs[2] == 0.0);  // exact, not approximate
        CHECK(prof.probs[0] + prof.probs[1] == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("all references parallel to w: uniform over the others") {
        // axis-aligned multiples keep the cosines exactly 1
        EmbeddingSpace space =
            space_of({{"w", {1, 0}}, {"a", {2, 0}}, {"b", {0.5, 0}}, {"c", {4, 0}}});
        SharedVocab shared;
        shared.words = {"a", "b", "c", "w"};
        WordProfile prof = word_profile(space, "w", shared);
        CHECK(prof.probs == std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3, 0.0});
    }
    SUBCASE("errors: absent word, too-small shared vocab") {
        EmbeddingSpace space = space_of({{"w", {1, 0}}, {"a", {0, 1}}});
        SharedVocab shared;
        shared.words = {"a"};
        CHECK_THROWS_AS(word_profile(space, "w", shared), Error);
        shared.words = {"a", "w"};
        CHECK_THROWS_AS(word_profile(space, "missing", shared), Error);
    }
}

TEST_CASE("profiles sum to one and stay non-negative on random geometry") {
    Rng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        size_t dim = 2 + rng.below(6);
        size_t n = 3 + rng.below(8);
        std::vector<std::pair<std::string, std::vector<double>>> words;
        SharedVocab shared;
        for (size_t i = 0; i < n; ++i) {
            std::string w = "w" + std::to_string(i);
            words.emplace_back(w, fixtures::random_vector(rng, dim));
            shared.words.push_back(w);
        }
        EmbeddingSpace space = space_of(words);
        std::sort(shared.words.begin(), shared.words.end());
        for (const auto& [w, _] : words) {
            WordProfile prof = word_profile(space, w, shared);
            double sum = 0.0;
            for (double p : prof.probs) {
                CHECK(p >= 0.0);
                sum += p;
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("domdrift hand value and KL properties") {
    WordProfile p, q;
    p.probs = {0.5, 0.5};
    q.probs = {0.9, 0.1};
    const double eps = 1e-10;

    double lambda = domdrift_score(p, q, eps);
    CHECK(lambda == doctest::Approx(0.5108256237659907).epsilon(1e-4));
    CHECK(lambda == doctest::Approx(oracles::kl_smoothed(p.probs, q.probs, eps)).epsilon(1e-12));

    SUBCASE("identical profiles give zero") {
        CHECK(domdrift_score(p, p, eps) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("raw zero in q stays finite via smoothing") {
        WordProfile z;
        z.probs = {1.0, 0.0};
        double v = domdrift_score(p, z, eps);
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
        double v2 = domdrift_score(z, p, eps);
        CHECK(std::isfinite(v2));
    }
    SUBCASE("length mismatch and bad epsilon error") {
        WordProfile bad;
        bad.probs = {1.0};
        CHECK_THROWS_AS(domdrift_score(p, bad, eps), Error);
        CHECK_THROWS_AS(domdrift_score(p, q, 0.0), Error);
        CHECK_THROWS_AS(domdrift_score(p, q, -1e-9), Error);
    }
    SUBCASE("non-negative on random profile pairs") {
        Rng rng(17);
        for (int t = 0; t < 200; ++t) {
            size_t n = 2 + rng.below(10);
            WordProfile a, b;
            double sa = 0, sb = 0;
            for (size_t i = 0; i < n; ++i) {
                a.probs.push_back(rng.uniform01());
                b.probs.push_back(rng.uniform01());
                sa += a.probs.back();
                sb += b.probs.back();
            }
            for (size_t i = 0; i < n; ++i) {
                a.probs[i] /= sa;
                b.probs[i] /= sb;
            }
            double v = domdrift_score(a, b, eps);
            CHECK(v >= 0.0);
            CHECK(v == doctest::Approx(oracles::kl_smoothed(a.probs, b.probs, eps)).epsilon(1e-10));
        }
    }
}

TEST_CASE("drift table: weights, normalization, gamma behavior") {
    // three lexicon words; "mid" drifts somewhat, "big" drifts a lot
    EmbeddingSpace src = space_of({{"anchor1", {1, 0, 0}},
                                   {"anchor2", {0, 1, 0}},
                                   {"low", {0.8, 0.1, 0}},
                                   {"mid", {0.5, 0.5, 0}},
                                   {"big", {1, 0.2, 0}}});
    EmbeddingSpace tgt = space_of({{"anchor1", {1, 0, 0}},
                                   {"anchor2", {0, 1, 0}},
                                   {"low", {0.8, 0.1, 0.02}},
                                   {"mid", {0.3, 0.6, 0.1}},
                                   {"big", {0, 0.1, 1.5}}},
                                  kTgtTag);
    SeedLexicon lex = lexicon_of({"low", "mid", "big"});
    DriftConfig cfg;

    DriftTable table = compute_drift_table(lex, src, tgt, cfg);
    REQUIRE(table.entries.size() == 3);
    CHECK(table.skipped_words.empty());

    double mean = 0.0;
    for (const auto& [w, e] : table.entries) {
        CHECK(e.lambda >= 0.0);
        CHECK(e.sample_weight > 0.0);
        mean += e.sample_weight;
    }
    mean /= 3.0;
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-9));

    // every lambda equals the independent profile+KL oracle over the shared
    // vocabulary, and weights are (1/max(lambda,floor))^gamma mean-normalized
    SharedVocab shared = shared_vocab(src, tgt);
    auto src_map = to_oracle(src);
    auto tgt_map = to_oracle(tgt);
    double weight_sum = 0.0;
    std::map<std::string, double> raw;
    for (const auto& [w, e] : table.entries) {
        double want = oracles::kl_smoothed(oracles::profile(src_map, w, shared.words),
                                           oracles::profile(tgt_map, w, shared.words), cfg.epsilon);
        CHECK(e.lambda == doctest::Approx(want).epsilon(1e-10));
        raw[w] = std::pow(1.0 / std::max(e.lambda, cfg.lambda_floor), cfg.gamma);
        weight_sum += raw[w];
    }
    for (const auto& [w, e] : table.entries)
        CHECK(e.sample_weight == doctest::Approx(raw[w] * 3.0 / weight_sum).epsilon(1e-12));

    // at gamma=1 weights are antitone in lambda, whatever the lambdas are
    std::vector<std::pair<double, double>> lw;
    for (const auto& [w, e] : table.entries) lw.emplace_back(e.lambda, e.sample_weight);
    std::sort(lw.begin(), lw.end());
    for (size_t i = 1; i < lw.size(); ++i) CHECK(lw[i - 1].second >= lw[i].second);

    SUBCASE("gamma=0 gives exactly unit weights") {
        DriftConfig zero = cfg;
        zero.gamma = 0.0;
        DriftTable t0 = compute_drift_table(lex, src, tgt, zero);
        for (const auto& [w, e] : t0.entries) CHECK(e.sample_weight == 1.0);
        // same lambdas as the gamma=1 table
        for (const auto& [w, e] : t0.entries)
            CHECK(e.lambda == doctest::Approx(table.entries.at(w).lambda).epsilon(1e-15));
    }
    SUBCASE("reweighting reproduces compute_drift_table at the new gamma") {
        DriftConfig two = cfg;
        two.gamma = 2.0;
        DriftTable direct = compute_drift_table(lex, src, tgt, two);
        DriftTable re = reweight_drift_table(table, 2.0, cfg.lambda_floor);
        for (const auto& [w, e] : direct.entries) {
            CHECK(re.entries.at(w).lambda == e.lambda);
            CHECK(re.entries.at(w).sample_weight == doctest::Approx(e.sample_weight).epsilon(1e-15));
        }
        CHECK(re.gamma == 2.0);
    }
    SUBCASE("skipped words recorded; all-skipped errors") {
        SeedLexicon partial = lexicon_of({"low", "ghost"});
        DriftTable t = compute_drift_table(partial, src, tgt, cfg);
        CHECK(t.entries.size() == 1);
        CHECK(t.skipped_words == std::vector<std::string>{"ghost"});

        SeedLexicon none = lexicon_of({"ghost", "phantom"});
        CHECK_THROWS_AS(compute_drift_table(none, src, tgt, cfg), Error);
    }
    SUBCASE("worker count does not change results") {
        DriftConfig par = cfg;
        par.workers = 4;
        DriftTable t4 = compute_drift_table(lex, src, tgt, par);
        for (const auto& [w, e] : table.entries) {
            CHECK(t4.entries.at(w).lambda == e.lambda);
            CHECK(t4.entries.at(w).sample_weight == e.sample_weight);
        }
    }
    SUBCASE("config validation") {
        DriftConfig bad = cfg;
        bad.gamma = -0.5;
        CHECK_THROWS_AS(bad.validate(), Error);
        bad = cfg;
        bad.epsilon = 0.0;
        CHECK_THROWS_AS(bad.validate(), Error);
        bad = cfg;
        bad.lambda_floor = 0.0;
        CHECK_THROWS_AS(bad.validate(), Error);
        bad = cfg;
        bad.workers = 0;
        CHECK_THROWS_AS(bad.validate(), Error);
        bad = cfg;
        bad.cap = 0;
        CHECK_THROWS_AS(bad.validate(), Error);
    }
}

TEST_CASE("positive rescaling leaves profiles, lambdas and weights unchanged") {
    Rng rng(53);
    std::vector<std::pair<std::string, std::vector<double>>> src_words, tgt_words;
    std::vector<std::string> names;
    for (int i = 0; i < 8; ++i) {
        std::string w = "w" + std::to_string(i);
        names.push_back(w);
        src_words.emplace_back(w, fixtures::random_vector(rng, 5));
        tgt_words.emplace_back(w, fixtures::random_vector(rng, 5));
    }
    EmbeddingSpace src = space_of(src_words);
    EmbeddingSpace tgt = space_of(tgt_words, kTgtTag);
    SeedLexicon lex = lexicon_of(names);
    DriftConfig cfg;
    DriftTable base = compute_drift_table(lex, src, tgt, cfg);

    // rescale every vector by a different positive scalar
    EmbeddingSpace src2 = src, tgt2 = tgt;
    double scale = 0.25;
    for (auto& [w, v] : src2.vectors) {
        for (double& x : v) x *= scale;
        scale *= 1.7;
    }
    for (auto& [w, v] : tgt2.vectors) {
        for (double& x : v) x *= scale;
        scale *= 1.3;
    }
    DriftTable scaled = compute_drift_table(lex, src2, tgt2, cfg);
    for (const auto& [w, e] : base.entries) {
        CHECK(scaled.entries.at(w).lambda == doctest::Approx(e.lambda).epsilon(1e-9));
        CHECK(scaled.entries.at(w).sample_weight ==
              doctest::Approx(e.sample_weight).epsilon(1e-9));
    }
}

TEST_CASE("orthogonal redraw in the target space maximizes that word's lambda") {
    Rng rng(67);
    for (int trial = 0; trial < 20; ++trial) {
        auto words = fixtures::make_clustered_words(rng, 20, 10, 4, 0.05);
        std::vector<std::string> names;
        for (const auto& [w, _] : words) names.push_back(w);
        EmbeddingSpace src = space_of(words);
        EmbeddingSpace tgt = space_of(words, kTgtTag);
        // plant: replace one word's target vector by an orthogonal redraw
        size_t k = rng.below(names.size());
        tgt.vectors[names[k]] = fixtures::orthogonal_redraw(rng, src.vectors.at(names[k]));

        DriftConfig cfg;
        DriftTable table = compute_drift_table(lexicon_of(names), src, tgt, cfg);
        std::string argmax;
        double best = -1.0;
        for (const auto& [w, e] : table.entries) {
            if (e.lambda > best) {
                best = e.lambda;
                argmax = w;
            }
        }
        CHECK(argmax == names[k]);
    }
}

TEST_CASE("drift table TSV round trip and validation") {
    fixtures::TempDir dir("drift_io");
    DriftTable table;
    table.gamma = 1.5;
    table.lambda_floor = 1e-6;
    table.entries["alpha"] = {0.25, 1.75};
    table.entries["beta"] = {1e-9, 0.25};

    std::string path = dir.path("drift.tsv");
    save_drift_table(path, table);
    DriftTable back = load_drift_table(path);
    REQUIRE(back.entries.size() == 2);
    CHECK(back.entries.at("alpha").lambda == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(back.entries.at("alpha").sample_weight == doctest::Approx(1.75).epsilon(1e-9));
    CHECK(back.find("alpha") != nullptr);
    CHECK(back.find("gone") == nullptr);

    CHECK_THROWS_AS(load_drift_table(dir.path("missing.tsv")), Error);
    CHECK_THROWS_AS(load_drift_table(fixtures::write(dir, "neg.tsv", "w\t-1\t1\n")), Error);
    CHECK_THROWS_AS(load_drift_table(fixtures::write(dir, "zw.tsv", "w\t0.5\t0\n")), Error);
    CHECK_THROWS_AS(load_drift_table(fixtures::write(dir, "dup.tsv", "w\t0.5\t1\nw\t0.5\t1\n")), Error);
    CHECK_THROWS_AS(load_drift_table(fixtures::write(dir, "cols.tsv", "w\t0.5\n")), Error);
    CHECK_THROWS_AS(load_drift_table(fixtures::write(dir, "empty.tsv", "")), Error);
}

TEST_CASE("drift report ranks cosine neighbors per space") {
    EmbeddingSpace src = space_of({{"w", {1, 0}},
                                   {"close", {0.95, 0.05}},
                                   {"far", {0, 1}},
                                   {"mid", {0.5, 0.5}}});
    EmbeddingSpace tgt = space_of({{"w", {0, 1}},
                                   {"close", {0.95, 0.05}},
                                   {"far", {0.05, 0.95}},
                                   {"mid", {0.5, 0.5}}},
                                  kTgtTag);

    DriftReport report = drift_report("w", src, tgt, 2);
    REQUIRE(report.source_neighbors.size() == 2);
    CHECK(report.source_neighbors[0].word == "close");
    CHECK(report.source_neighbors[0].similarity ==
          doctest::Approx(oracles::cosine({1, 0}, {0.95, 0.05})).epsilon(1e-12));
    CHECK(report.target_neighbors[0].word == "far");

    // k larger than vocab-1 truncates; the word itself never appears
    DriftReport full = drift_report("w", src, tgt, 99);
    CHECK(full.source_neighbors.size() == 3);
    for (const auto& nb : full.source_neighbors) CHECK(nb.word != "w");

    CHECK_THROWS_AS(drift_report("ghost", src, tgt, 2), Error);
}
