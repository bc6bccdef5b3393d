// lexidrift command-line toolkit: corpus stats, word alignment, label
// projection, drift scoring, classifier training and evaluation, plus the
// end-to-end pipeline driver.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "lexidrift/align.hpp"
#include "lexidrift/classify.hpp"
#include "lexidrift/common.hpp"
#include "lexidrift/corpus.hpp"
#include "lexidrift/embed.hpp"
#include "lexidrift/eval.hpp"
#include "lexidrift/lexicon.hpp"
#include "lexidrift/pipeline.hpp"
#include "lexidrift/project.hpp"

namespace {

using namespace lexidrift;

constexpr int kOk = 0;
constexpr int kValidationError = 1;
constexpr int kStageFailure = 2;

void print_error(const std::exception& e) { std::fprintf(stderr, "lexidrift: %s\n", e.what()); }

struct GlobalOpts {
    int workers = 1;
    uint64_t seed = 42;
    bool resume = false;
};

TokenizationPolicy make_policy(bool no_lowercase, bool keep_punctuation, size_t min_len) {
    TokenizationPolicy policy;
    policy.lowercase = !no_lowercase;
    policy.strip_punctuation = !keep_punctuation;
    policy.min_token_length = min_len;
    return policy;
}

void print_scores(const std::vector<EvalReport>& reports) {
    for (const auto& r : reports) {
        std::printf("%-18s acc %-12s macro_f1 %-12s (n_train %zu, n_test %zu)\n",
                    r.seed_source.c_str(), fmt_g(r.scores.accuracy, 6).c_str(),
                    fmt_g(r.scores.macro_f1, 6).c_str(), r.n_train, r.n_test);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cross-lingual sentiment lexicon induction with domain-drift sample weighting"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("lexidrift ") + kToolVersion);

    GlobalOpts global;
    auto* workers_opt =
        app.add_option("--workers", global.workers, "worker threads for parallel stages")
            ->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", global.seed, "seed for every random draw");
    app.add_flag("--resume", global.resume, "skip pipeline stages whose inputs are unchanged");

    int rc = kOk;

    // ---- corpus stats -----------------------------------------------------
    auto* corpus_cmd = app.add_subcommand("corpus", "parallel corpus utilities");
    corpus_cmd->fallthrough();
    corpus_cmd->require_subcommand(1);
    auto* stats_cmd = corpus_cmd->add_subcommand("stats", "tokenize and count one corpus side");
    stats_cmd->fallthrough();
    struct {
        std::string input, side = "source", out, source_lang = "src", target_lang = "tgt";
        bool no_lowercase = false, keep_punctuation = false;
        size_t min_token_length = 1;
    } stats;
    stats_cmd->add_option("--input", stats.input, "parallel corpus TSV")->required();
    stats_cmd->add_option("--side", stats.side, "which side to count")
        ->check(CLI::IsMember({"source", "target"}));
    stats_cmd->add_option("--out", stats.out, "write the word frequency TSV here");
    stats_cmd->add_option("--source-lang", stats.source_lang, "source language tag");
    stats_cmd->add_option("--target-lang", stats.target_lang, "target language tag");
    stats_cmd->add_flag("--no-lowercase", stats.no_lowercase, "keep original casing");
    stats_cmd->add_flag("--keep-punctuation", stats.keep_punctuation, "keep edge punctuation");
    stats_cmd->add_option("--min-token-length", stats.min_token_length, "minimum code points per token");
    stats_cmd->callback([&]() {
        ParallelCorpus corpus;
        try {
            corpus = load_parallel_corpus(
                stats.input, LangDomainTag(stats.source_lang, "parallel"),
                LangDomainTag(stats.target_lang, "parallel"),
                make_policy(stats.no_lowercase, stats.keep_punctuation, stats.min_token_length));
        } catch (const Error& e) {
            print_error(e);
            rc = kValidationError;
            return;
        }
        try {
            CorpusSide side = stats.side == "source" ? CorpusSide::Source : CorpusSide::Target;
            Vocabulary vocab = build_vocab(corpus, side);
            std::printf("pairs %zu\ndropped_pairs %zu\n%s_tokens %llu\n%s_vocab %zu\n",
                        corpus.pairs.size(), corpus.dropped_pairs, stats.side.c_str(),
                        static_cast<unsigned long long>(vocab.total_tokens), stats.side.c_str(),
                        vocab.entries.size());
            if (!stats.out.empty()) save_vocab(stats.out, vocab);
        } catch (const Error& e) {
            print_error(e);
            rc = kStageFailure;
        }
    });

    // ---- align ------------------------------------------------------------
    auto* align_cmd = app.add_subcommand("align", "train the EM word aligner");
    align_cmd->fallthrough();
    struct {
        std::string corpus, out, ttable, load_pharaoh;
        std::string source_lang = "src", target_lang = "tgt";
        int iters = 5;
        double tension = 0.0;
        bool no_null = false;
    } al;
    align_cmd->add_option("--corpus", al.corpus, "parallel corpus TSV")->required();
    align_cmd->add_option("--iters", al.iters, "EM iterations")->check(CLI::PositiveNumber);
    align_cmd->add_option("--tension", al.tension, "diagonal tension (0 disables)");
    align_cmd->add_flag("--no-null", al.no_null, "disable the NULL source word");
    align_cmd->add_option("--out", al.out, "Pharaoh alignment output")->required();
    align_cmd->add_option("--ttable", al.ttable, "also save the translation table TSV");
    align_cmd->add_option("--load-pharaoh", al.load_pharaoh,
                          "validate and re-emit existing alignments instead of training");
    align_cmd->add_option("--source-lang", al.source_lang, "source language tag");
    align_cmd->add_option("--target-lang", al.target_lang, "target language tag");
    align_cmd->callback([&]() {
        ParallelCorpus corpus;
        try {
            corpus = load_parallel_corpus(al.corpus, LangDomainTag(al.source_lang, "parallel"),
                                          LangDomainTag(al.target_lang, "parallel"),
                                          TokenizationPolicy{});
        } catch (const Error& e) {
            print_error(e);
            rc = kValidationError;
            return;
        }
        try {
            if (!al.load_pharaoh.empty()) {
                std::vector<AlignmentLink> links = load_pharaoh_alignments(al.load_pharaoh, corpus);
                save_pharaoh_alignments(al.out, links, corpus.pairs.size());
                std::printf("loaded %zu links for %zu pairs\n", links.size(), corpus.pairs.size());
                return;
            }
            AlignerConfig config;
            config.em_iterations = al.iters;
            config.diagonal_tension = al.tension;
            config.use_null = !al.no_null;
            config.workers = global.workers;
            TrainResult result = train_aligner(corpus, config);
            for (size_t i = 0; i < result.iteration_log_likelihood.size(); ++i) {
                std::printf("iteration %zu log_likelihood %s\n", i + 1,
                            fmt_g(result.iteration_log_likelihood[i], 9).c_str());
            }
            std::vector<AlignmentLink> links = viterbi_align(result.table, corpus, config);
            save_pharaoh_alignments(al.out, links, corpus.pairs.size());
            if (!al.ttable.empty()) save_translation_table(al.ttable, result.table);
            std::printf("aligned %zu pairs (%zu links, %zu table entries)\n", corpus.pairs.size(),
                        links.size(), result.table.entry_count());
        } catch (const Error& e) {
            print_error(e);
            rc = kStageFailure;
        }
    });

    // ---- project ----------------------------------------------------------
    auto* project_cmd = app.add_subcommand("project", "project seed labels across alignments");
    project_cmd->fallthrough();
    struct {
        std::string corpus, alignments, seeds, out;
        std::string source_lang = "src", target_lang = "tgt";
        double q = 0.05;
    } pj;
    project_cmd->add_option("--corpus", pj.corpus, "parallel corpus TSV")->required();
    project_cmd->add_option("--alignments", pj.alignments, "Pharaoh alignment file")->required();
    project_cmd->add_option("--seeds", pj.seeds, "source-language seed lexicon TSV")->required();
    project_cmd->add_option("--q", pj.q, "Benjamini-Hochberg false discovery rate");
    project_cmd->add_option("--out", pj.out, "induced lexicon output TSV")->required();
    project_cmd->add_option("--source-lang", pj.source_lang, "source language tag");
    project_cmd->add_option("--target-lang", pj.target_lang, "target language tag");
    project_cmd->callback([&]() {
        ParallelCorpus corpus;
        SeedLexicon seeds;
        std::vector<AlignmentLink> links;
        try {
            corpus = load_parallel_corpus(pj.corpus, LangDomainTag(pj.source_lang, "parallel"),
                                          LangDomainTag(pj.target_lang, "parallel"),
                                          TokenizationPolicy{});
            seeds = load_lexicon(pj.seeds, LangDomainTag(pj.source_lang, "seed"));
            links = load_pharaoh_alignments(pj.alignments, corpus);
            if (!(pj.q > 0.0) || !(pj.q < 1.0)) throw Error("q must be in (0, 1)");
        } catch (const Error& e) {
            print_error(e);
            rc = kValidationError;
            return;
        }
        try {
            AssociationTable table = substitute_and_count(links, corpus, seeds);
            SeedLexicon induced = extract_lexicon(table, pj.q, LangDomainTag(pj.target_lang, "induced"));
            save_lexicon(pj.out, induced);
            std::printf("induced %zu words (%zu POS, %zu NEG) from %llu labeled events\n",
                        induced.size(), induced.count(Polarity::Positive),
                        induced.count(Polarity::Negative),
                        static_cast<unsigned long long>(table.total_events()));
        } catch (const Error& e) {
            print_error(e);
            rc = kStageFailure;
        }
    });

    // ---- drift ------------------------------------------------------------
    auto* drift_cmd = app.add_subcommand("drift", "score per-word domain drift");
    drift_cmd->fallthrough();
    struct {
        std::string lexicon, src_emb, tgt_emb, freq, out, lang = "und";
        double gamma = 1.0, epsilon = 1e-10, lambda_floor = 1e-6;
        size_t cap = 0;
    } dr;
    drift_cmd->add_option("--lexicon", dr.lexicon, "lexicon TSV to score")->required();
    drift_cmd->add_option("--src-emb", dr.src_emb, "source-domain embedding text file")->required();
    drift_cmd->add_option("--tgt-emb", dr.tgt_emb, "target-domain embedding text file")->required();
    drift_cmd->add_option("--gamma", dr.gamma, "inverse-drift weight exponent");
    drift_cmd->add_option("--cap", dr.cap, "restrict the shared vocabulary to the N most frequent words");
    drift_cmd->add_option("--freq", dr.freq, "word frequency TSV (required with --cap)");
    drift_cmd->add_option("--epsilon", dr.epsilon, "profile smoothing floor");
    drift_cmd->add_option("--lambda-floor", dr.lambda_floor, "lambda floor for inverse weights");
    drift_cmd->add_option("--lang", dr.lang, "language tag for reports");
    drift_cmd->add_option("--out", dr.out, "drift table output TSV")->required();
    drift_cmd->callback([&]() {
        SeedLexicon lexicon;
        EmbeddingSpace src, tgt;
        Vocabulary freq;
        try {
            lexicon = load_lexicon(dr.lexicon, LangDomainTag(dr.lang, "induced"));
            src = load_embeddings(dr.src_emb, LangDomainTag(dr.lang, "source"));
            tgt = load_embeddings(dr.tgt_emb, LangDomainTag(dr.lang, "target"));
            if (dr.cap > 0) {
                if (dr.freq.empty()) throw Error("--cap requires --freq");
                freq = load_vocab(dr.freq, LangDomainTag(dr.lang, "target"));
            }
        } catch (const Error& e) {
            print_error(e);
            rc = kValidationError;
            return;
        }
        try {
            DriftConfig config;
            config.gamma = dr.gamma;
            config.epsilon = dr.epsilon;
            config.lambda_floor = dr.lambda_floor;
            config.workers = global.workers;
            if (dr.cap > 0) config.cap = dr.cap;
            DriftTable table =
                compute_drift_table(lexicon, src, tgt, config, dr.cap > 0 ? &freq : nullptr);
            save_drift_table(dr.out, table);
            std::printf("drift table: %zu words (%zu lexicon words missing from an embedding)\n",
                        table.entries.size(), table.skipped_words.size());
        } catch (const Error& e) {
            print_error(e);
            rc = kStageFailure;
        }
    });

    // ---- drift-report -----------------------------------------------------
    auto* report_cmd = app.add_subcommand("drift-report", "inspect a word's neighborhoods");
    report_cmd->fallthrough();
    struct {
        std::string word, src_emb, tgt_emb, lang = "und";
        size_t k = 10;
    } rp;
    report_cmd->add_option("--word", rp.word, "word to inspect")->required();
    report_cmd->add_option("-k,--k", rp.k, "neighbors per space")->check(CLI::PositiveNumber);
    report_cmd->add_option("--src-emb", rp.src_emb, "source-domain embedding text file")->required();
    report_cmd->add_option("--tgt-emb", rp.tgt_emb, "target-domain embedding text file")->required();
    report_cmd->add_option("--lang", rp.lang, "language tag for headers");
    report_cmd->callback([&]() {
        EmbeddingSpace src, tgt;
        try {
            src = load_embeddings(rp.src_emb, LangDomainTag(rp.lang, "source"));
            tgt = load_embeddings(rp.tgt_emb, LangDomainTag(rp.lang, "target"));
        } catch (const Error& e) {
            print_error(e);
            rc = kValidationError;
            return;
        }
        try {
            DriftReport report = drift_report(rp.word, src, tgt, rp.k);
            std::printf("word %s\n", report.word.c_str());
            auto dump = [](const char* header, const std::vector<Neighbor>& neighbors) {
                std::printf("%s\n", header);
                for (const auto& n : neighbors) {
                    std::printf("  %s\t%s\n", n.word.c_str(), fmt_g(n.similarity, 9).c_str());
                }
            };
            dump("source neighbors", report.source_neighbors);
            dump("target neighbors", report.target_neighbors);
        } catch (const Error& e) {
            print_error(e);
            rc = kStageFailure;
        }
    });

    // ---- train ------------------------------------------------------------
    auto* train_cmd = app.add_subcommand("train", "train the word-sentiment classifier");
    train_cmd->fallthrough();
    struct {
        std::string seeds, weights, emb, out, lang = "und";
        double l2 = 1.0, tol = 1e-6, lambda_floor = 1e-6;
        int max_iters = 1000, folds = 5;
        std::vector<double> gamma_grid;
    } tr;
    train_cmd->add_option("--seeds", tr.seeds, "training lexicon TSV")->required();
    train_cmd->add_option("--weights", tr.weights, "drift table TSV with sample weights");
    train_cmd->add_option("--emb", tr.emb, "embedding text file providing features")->required();
    train_cmd->add_option("--l2", tr.l2, "l2 strength on coefficients");
    train_cmd->add_option("--tol", tr.tol, "gradient max-norm stopping tolerance");
    train_cmd->add_option("--max-iters", tr.max_iters, "iteration cap")->check(CLI::PositiveNumber);
    train_cmd->add_option("--gamma-grid", tr.gamma_grid,
                          "exponent grid; more than one value cross-validates (needs --weights)")
        ->delimiter(',');
    train_cmd->add_option("--folds", tr.folds, "cross-validation folds")->check(CLI::PositiveNumber);
    train_cmd->add_option("--lambda-floor", tr.lambda_floor, "lambda floor for reweighting");
    train_cmd->add_option("--lang", tr.lang, "language tag");
    train_cmd->add_option("--out", tr.out, "model output path")->required();
    train_cmd->callback([&]() {
        SeedLexicon lexicon;
        EmbeddingSpace emb;
        DriftTable drift;
        bool have_drift = false;
        try {
            lexicon = load_lexicon(tr.seeds, LangDomainTag(tr.lang, "induced"));
            emb = load_embeddings(tr.emb, LangDomainTag(tr.lang, "target"));
            if (!tr.weights.empty()) {
                drift = load_drift_table(tr.weights);
                have_drift = true;
            }
            if (!tr.gamma_grid.empty() && !have_drift) {
                throw Error("--gamma-grid requires --weights");
            }
        } catch (const Error& e) {
            print_error(e);
            rc = kValidationError;
            return;
        }
        try {
            if (!tr.gamma_grid.empty()) {
                double gamma = tr.gamma_grid[0];
                if (tr.gamma_grid.size() > 1) {
                    TuneConfig tune;
                    tune.grid = tr.gamma_grid;
                    tune.folds = tr.folds;
                    tune.seed = global.seed;
                    tune.l2 = tr.l2;
                    tune.tol = tr.tol;
                    tune.max_iters = tr.max_iters;
                    tune.lambda_floor = tr.lambda_floor;
                    tune.workers = global.workers;
                    TuneResult tuned = tune_weight_exponent(lexicon, drift, emb, tune);
                    for (size_t i = 0; i < tuned.grid.size(); ++i) {
                        std::printf("gamma %s mean_macro_f1 %s\n", fmt_g(tuned.grid[i], 6).c_str(),
                                    fmt_g(tuned.mean_macro_f1[i], 9).c_str());
                    }
                    gamma = tuned.best_gamma;
                }
                std::printf("gamma %s selected\n", fmt_g(gamma, 6).c_str());
                drift = reweight_drift_table(drift, gamma, tr.lambda_floor);
            }
            std::vector<LabeledSample> samples;
            size_t dropped = 0;
            for (const auto& [word, entry] : lexicon.entries) {
                const std::vector<double>* vec = emb.find(word);
                if (!vec) {
                    ++dropped;
                    continue;
                }
                LabeledSample s;
                s.word = word;
                s.features = *vec;
                s.label = entry.polarity;
                if (have_drift) {
                    const DriftEntry* de = drift.find(word);
                    s.weight = de ? de->sample_weight : 1.0;
                }
                samples.push_back(std::move(s));
            }
            LogRegModel model = train_weighted_logreg(samples, tr.l2, tr.tol, tr.max_iters);
            save_model(tr.out, model);
            std::printf("trained on %zu samples (%zu dropped), %d iterations, objective %s\n",
                        samples.size(), dropped, model.iterations_run,
                        fmt_g(model.final_objective, 9).c_str());
        } catch (const Error& e) {
            print_error(e);
            rc = kStageFailure;
        }
    });

    // ---- eval -------------------------------------------------------------
    auto* eval_cmd = app.add_subcommand("eval", "A/B/C split evaluation against a gold lexicon");
    eval_cmd->fallthrough();
    struct {
        std::string unisent, gold, emb, drift, out, lang = "und";
        double test_frac = 0.2, l2 = 1.0, tol = 1e-6;
        int max_iters = 1000;
    } ev;
    eval_cmd->add_option("--unisent", ev.unisent, "induced lexicon TSV")->required();
    eval_cmd->add_option("--gold", ev.gold, "gold lexicon TSV")->required();
    eval_cmd->add_option("--emb", ev.emb, "embedding text file")->required();
    eval_cmd->add_option("--drift", ev.drift, "drift table TSV for the weighted condition");
    eval_cmd->add_option("--test-frac", ev.test_frac, "test fraction of gold-labeled words");
    eval_cmd->add_option("--l2", ev.l2, "l2 strength");
    eval_cmd->add_option("--tol", ev.tol, "stopping tolerance");
    eval_cmd->add_option("--max-iters", ev.max_iters, "iteration cap")->check(CLI::PositiveNumber);
    eval_cmd->add_option("--lang", ev.lang, "language tag for reports");
    eval_cmd->add_option("--out", ev.out, "output directory")->required();
    eval_cmd->callback([&]() {
        SeedLexicon unisent, gold;
        EmbeddingSpace emb;
        DriftTable drift;
        bool have_drift = false;
        try {
            unisent = load_lexicon(ev.unisent, LangDomainTag(ev.lang, "induced"));
            gold = load_lexicon(ev.gold, LangDomainTag(ev.lang, "gold"));
            emb = load_embeddings(ev.emb, LangDomainTag(ev.lang, "target"));
            if (!ev.drift.empty()) {
                drift = load_drift_table(ev.drift);
                have_drift = true;
            }
        } catch (const Error& e) {
            print_error(e);
            rc = kValidationError;
            return;
        }
        try {
            SplitConfig scfg;
            scfg.test_fraction = ev.test_frac;
            scfg.seed = global.seed;
            SplitSpec split = split_datasets(unisent, gold, emb, scfg);
            EvalConfig ecfg;
            ecfg.l2 = ev.l2;
            ecfg.tol = ev.tol;
            ecfg.max_iters = ev.max_iters;
            ecfg.workers = global.workers;
            ecfg.seed = global.seed;
            std::vector<EvalReport> reports =
                evaluate_word_sentiment(split, emb, have_drift ? &drift : nullptr, ecfg);
            std::filesystem::create_directories(ev.out);
            std::filesystem::path dir(ev.out);
            save_eval_reports((dir / "eval_words.json").string(), (dir / "eval_words.tsv").string(),
                              reports);
            print_scores(reports);
        } catch (const Error& e) {
            print_error(e);
            rc = kStageFailure;
        }
    });

    // ---- eval-emoticons ----------------------------------------------------
    auto* emo_cmd = app.add_subcommand("eval-emoticons", "emoticon sentiment evaluation");
    emo_cmd->fallthrough();
    struct {
        std::string unisent, emoticons, emb, drift, out, lang = "und";
        double l2 = 1.0, tol = 1e-6;
        int max_iters = 1000;
    } em;
    emo_cmd->add_option("--unisent", em.unisent, "induced lexicon TSV")->required();
    emo_cmd->add_option("--emoticons", em.emoticons, "gold emoticon lexicon TSV")->required();
    emo_cmd->add_option("--emb", em.emb, "target-domain embedding text file")->required();
    emo_cmd->add_option("--drift", em.drift, "drift table TSV for the weighted condition");
    emo_cmd->add_option("--l2", em.l2, "l2 strength");
    emo_cmd->add_option("--tol", em.tol, "stopping tolerance");
    emo_cmd->add_option("--max-iters", em.max_iters, "iteration cap")->check(CLI::PositiveNumber);
    emo_cmd->add_option("--lang", em.lang, "language tag for reports");
    emo_cmd->add_option("--out", em.out, "output directory")->required();
    emo_cmd->callback([&]() {
        SeedLexicon unisent, emoticons;
        EmbeddingSpace emb;
        DriftTable drift;
        bool have_drift = false;
        try {
            unisent = load_lexicon(em.unisent, LangDomainTag(em.lang, "induced"));
            emoticons = load_lexicon(em.emoticons, LangDomainTag(em.lang, "emoticons"));
            emb = load_embeddings(em.emb, LangDomainTag(em.lang, "target"));
            if (!em.drift.empty()) {
                drift = load_drift_table(em.drift);
                have_drift = true;
            }
        } catch (const Error& e) {
            print_error(e);
            rc = kValidationError;
            return;
        }
        try {
            EvalConfig ecfg;
            ecfg.l2 = em.l2;
            ecfg.tol = em.tol;
            ecfg.max_iters = em.max_iters;
            ecfg.workers = global.workers;
            ecfg.seed = global.seed;
            std::vector<EvalReport> reports =
                evaluate_emoticons(unisent, have_drift ? &drift : nullptr, emb, emoticons, ecfg);
            std::filesystem::create_directories(em.out);
            std::filesystem::path dir(em.out);
            save_eval_reports((dir / "eval_emoticons.json").string(),
                              (dir / "eval_emoticons.tsv").string(), reports);
            print_scores(reports);
        } catch (const Error& e) {
            print_error(e);
            rc = kStageFailure;
        }
    });

    // ---- pipeline ---------------------------------------------------------
    auto* pipe_cmd = app.add_subcommand("pipeline", "run align -> project -> drift -> train -> eval");
    pipe_cmd->fallthrough();
    std::string pipe_config;
    pipe_cmd->add_option("--config", pipe_config, "run configuration file")->required();
    pipe_cmd->callback([&]() {
        RunConfig cfg;
        try {
            cfg = load_run_config(pipe_config);
            if (workers_opt->count() > 0) cfg.workers = global.workers;
            if (seed_opt->count() > 0) cfg.seed = global.seed;
        } catch (const Error& e) {
            print_error(e);
            rc = kValidationError;
            return;
        }
        try {
            nlohmann::ordered_json manifest = run_pipeline(cfg, global.resume);
            for (const auto& stage : manifest["stages"]) {
                std::printf("stage %-15s %s (%lld ms)\n",
                            stage["name"].get<std::string>().c_str(),
                            stage["skipped"].get<bool>() ? "skipped" : "done",
                            static_cast<long long>(stage["wall_ms"].get<int64_t>()));
            }
            std::printf("manifest %s\n",
                        (std::filesystem::path(cfg.out_dir) / "manifest.json").string().c_str());
        } catch (const StageError& e) {
            print_error(e);
            rc = kStageFailure;
        } catch (const Error& e) {
            print_error(e);
            rc = kValidationError;
        }
    });

    // ---- validate -----------------------------------------------------------
    auto* validate_cmd = app.add_subcommand("validate", "check a run configuration");
    validate_cmd->fallthrough();
    std::string validate_config_path;
    validate_cmd->add_option("--config", validate_config_path, "run configuration file")->required();
    validate_cmd->callback([&]() {
        try {
            RunConfig cfg = load_run_config(validate_config_path);
            std::vector<std::string> violations = validate_config(cfg);
            if (violations.empty()) {
                std::printf("configuration ok\n");
                return;
            }
            for (const auto& v : violations) std::printf("violation: %s\n", v.c_str());
            rc = kValidationError;
        } catch (const Error& e) {
            print_error(e);
            rc = kValidationError;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kValidationError;
    }
    return rc;
}
