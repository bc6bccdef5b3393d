#include "lexidrift/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>

#include "lexidrift/align.hpp"
#include "lexidrift/classify.hpp"
#include "lexidrift/digest.hpp"
#include "lexidrift/embed.hpp"
#include "lexidrift/eval.hpp"
#include "lexidrift/project.hpp"

namespace lexidrift {

const char* kToolVersion = "0.1.0";

namespace {

namespace fs = std::filesystem;

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

bool parse_bool(const std::string& value, const std::string& context) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw Error(context + ": expected true/false/1/0, got `" + value + "`");
}

std::vector<double> parse_grid(const std::string& value, const std::string& context) {
    std::vector<double> grid;
    for (const auto& part : split_char(value, ',')) {
        std::string tok = trim(part);
        if (tok.empty()) throw Error(context + ": empty grid element");
        grid.push_back(parse_double(tok, context));
    }
    if (grid.empty()) throw Error(context + ": empty grid");
    return grid;
}

// Canonical key order; also the manifest config-echo order.
const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = {
        "corpus", "seeds", "gold", "emoticons", "src_emb", "tgt_emb", "out_dir",
        "source_lang", "target_lang", "source_domain", "target_domain",
        "lowercase", "strip_punctuation", "min_token_length",
        "em_iterations", "diagonal_tension", "use_null",
        "q", "gamma_grid", "folds", "l2", "tol", "max_iters",
        "epsilon", "lambda_floor", "cap",
        "test_fraction", "seed", "workers",
    };
    return keys;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value,
               const std::string& context) {
    const std::string ctx = context + ": " + key;
    if (key == "corpus") cfg.corpus = value;
    else if (key == "seeds") cfg.seeds = value;
    else if (key == "gold") cfg.gold = value;
    else if (key == "emoticons") cfg.emoticons = value;
    else if (key == "src_emb") cfg.src_emb = value;
    else if (key == "tgt_emb") cfg.tgt_emb = value;
    else if (key == "out_dir") cfg.out_dir = value;
    else if (key == "source_lang") cfg.source_lang = value;
    else if (key == "target_lang") cfg.target_lang = value;
    else if (key == "source_domain") cfg.source_domain = value;
    else if (key == "target_domain") cfg.target_domain = value;
    else if (key == "lowercase") cfg.policy.lowercase = parse_bool(value, ctx);
    else if (key == "strip_punctuation") cfg.policy.strip_punctuation = parse_bool(value, ctx);
    else if (key == "min_token_length") cfg.policy.min_token_length = static_cast<size_t>(parse_int(value, ctx));
    else if (key == "em_iterations") cfg.em_iterations = static_cast<int>(parse_int(value, ctx));
    else if (key == "diagonal_tension") cfg.diagonal_tension = parse_double(value, ctx);
    else if (key == "use_null") cfg.use_null = parse_bool(value, ctx);
    else if (key == "q") cfg.q = parse_double(value, ctx);
    else if (key == "gamma_grid") cfg.gamma_grid = parse_grid(value, ctx);
    else if (key == "folds") cfg.folds = static_cast<int>(parse_int(value, ctx));
    else if (key == "l2") cfg.l2 = parse_double(value, ctx);
    else if (key == "tol") cfg.tol = parse_double(value, ctx);
    else if (key == "max_iters") cfg.max_iters = static_cast<int>(parse_int(value, ctx));
    else if (key == "epsilon") cfg.epsilon = parse_double(value, ctx);
    else if (key == "lambda_floor") cfg.lambda_floor = parse_double(value, ctx);
    else if (key == "cap") cfg.cap = static_cast<size_t>(parse_int(value, ctx));
    else if (key == "test_fraction") cfg.test_fraction = parse_double(value, ctx);
    else if (key == "seed") {
        int64_t s = parse_int(value, ctx);
        if (s < 0) throw Error(ctx + ": seed must be >= 0");
        cfg.seed = static_cast<uint64_t>(s);
    } else if (key == "workers") cfg.workers = static_cast<int>(parse_int(value, ctx));
    else throw Error(context + ": unknown key `" + key + "`");
}

std::string grid_to_string(const std::vector<double>& grid) {
    std::string s;
    for (size_t i = 0; i < grid.size(); ++i) {
        if (i) s += ',';
        s += fmt_g(grid[i], 17);
    }
    return s;
}

nlohmann::ordered_json config_to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["corpus"] = c.corpus;
    j["seeds"] = c.seeds;
    j["gold"] = c.gold;
    j["emoticons"] = c.emoticons;
    j["src_emb"] = c.src_emb;
    j["tgt_emb"] = c.tgt_emb;
    j["out_dir"] = c.out_dir;
    j["source_lang"] = c.source_lang;
    j["target_lang"] = c.target_lang;
    j["source_domain"] = c.source_domain;
    j["target_domain"] = c.target_domain;
    j["lowercase"] = c.policy.lowercase;
    j["strip_punctuation"] = c.policy.strip_punctuation;
    j["min_token_length"] = c.policy.min_token_length;
    j["em_iterations"] = c.em_iterations;
    j["diagonal_tension"] = c.diagonal_tension;
    j["use_null"] = c.use_null;
    j["q"] = c.q;
    j["gamma_grid"] = c.gamma_grid;
    j["folds"] = c.folds;
    j["l2"] = c.l2;
    j["tol"] = c.tol;
    j["max_iters"] = c.max_iters;
    j["epsilon"] = c.epsilon;
    j["lambda_floor"] = c.lambda_floor;
    j["cap"] = c.cap;
    j["test_fraction"] = c.test_fraction;
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    return j;
}

}  // namespace

void apply_env_overrides(RunConfig& config) {
    for (const auto& key : config_keys()) {
        std::string var = "LEXIDRIFT_";
        for (char c : key) var += static_cast<char>(c >= 'a' && c <= 'z' ? c - 'a' + 'A' : c);
        if (const char* value = std::getenv(var.c_str())) {
            apply_key(config, key, value, "environment " + var);
        }
    }
}

RunConfig load_run_config(const std::string& path) {
    std::string text = read_text_file(path);
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        size_t eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw Error(path + ":" + std::to_string(line_no) + ": expected `key = value`");
        }
        std::string key = trim(stripped.substr(0, eq));
        std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) {
            throw Error(path + ":" + std::to_string(line_no) + ": empty key");
        }
        apply_key(cfg, key, value, path + ":" + std::to_string(line_no));
    }
    apply_env_overrides(cfg);
    return cfg;
}

std::vector<std::string> validate_config(const RunConfig& c) {
    std::vector<std::string> violations;
    auto need_file = [&violations](const std::string& path, const std::string& name) {
        if (path.empty()) {
            violations.push_back(name + " path is not set");
        } else if (!fs::exists(path)) {
            violations.push_back(name + " file not found: " + path);
        }
    };
    need_file(c.corpus, "corpus");
    need_file(c.seeds, "seeds");
    need_file(c.gold, "gold");
    need_file(c.src_emb, "src_emb");
    need_file(c.tgt_emb, "tgt_emb");
    if (!c.emoticons.empty() && !fs::exists(c.emoticons)) {
        violations.push_back("emoticons file not found: " + c.emoticons);
    }
    if (c.out_dir.empty()) violations.push_back("out_dir is not set");

    auto try_tag = [&violations](const std::string& lang, const std::string& domain,
                                 const std::string& what) {
        try {
            LangDomainTag tag(lang, domain);
        } catch (const Error& e) {
            violations.push_back(what + ": " + e.what());
        }
    };
    try_tag(c.source_lang, "parallel", "source_lang");
    try_tag(c.target_lang, "parallel", "target_lang");
    try_tag(c.target_lang, c.source_domain, "source_domain");
    try_tag(c.target_lang, c.target_domain, "target_domain");

    if (c.policy.min_token_length < 1) violations.push_back("min_token_length must be >= 1");
    if (c.em_iterations < 1) violations.push_back("em_iterations must be >= 1");
    if (!(c.diagonal_tension >= 0.0) || !std::isfinite(c.diagonal_tension)) {
        violations.push_back("diagonal_tension must be a finite real >= 0");
    }
    if (!(c.q > 0.0) || !(c.q < 1.0)) violations.push_back("q must be in (0, 1)");
    if (c.gamma_grid.empty()) violations.push_back("gamma_grid must be non-empty");
    for (double g : c.gamma_grid) {
        if (!(g >= 0.0) || !std::isfinite(g)) {
            violations.push_back("gamma_grid entries must be finite reals >= 0");
            break;
        }
    }
    if (c.folds < 2) violations.push_back("folds must be >= 2");
    if (!(c.l2 >= 0.0) || !std::isfinite(c.l2)) violations.push_back("l2 must be a finite real >= 0");
    if (!(c.tol > 0.0)) violations.push_back("tol must be > 0");
    if (c.max_iters < 1) violations.push_back("max_iters must be >= 1");
    if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) {
        violations.push_back("epsilon must be a finite real > 0");
    }
    if (!(c.lambda_floor > 0.0) || !std::isfinite(c.lambda_floor)) {
        violations.push_back("lambda_floor must be a finite real > 0");
    }
    if (!(c.test_fraction > 0.0) || !(c.test_fraction < 1.0)) {
        violations.push_back("test_fraction must be in (0, 1)");
    }
    if (c.workers < 1) violations.push_back("workers must be >= 1");
    return violations;
}

namespace {

// Lazily loaded shared state between stages; a skipped stage's consumers
// re-load its artifact from disk.
struct PipelineState {
    const RunConfig& cfg;
    fs::path out;

    std::optional<ParallelCorpus> corpus;
    std::optional<SeedLexicon> unisent;
    std::optional<EmbeddingSpace> src_emb;
    std::optional<EmbeddingSpace> tgt_emb;
    std::optional<DriftTable> drift;

    explicit PipelineState(const RunConfig& config) : cfg(config), out(config.out_dir) {}

    std::string artifact(const char* name) const { return (out / name).string(); }

    const ParallelCorpus& get_corpus() {
        if (!corpus) {
            corpus = load_parallel_corpus(cfg.corpus, LangDomainTag(cfg.source_lang, "parallel"),
                                          LangDomainTag(cfg.target_lang, "parallel"), cfg.policy);
        }
        return *corpus;
    }
    const SeedLexicon& get_unisent() {
        if (!unisent) {
            unisent = load_lexicon(artifact("unisent.tsv"), LangDomainTag(cfg.target_lang, "induced"));
        }
        return *unisent;
    }
    const EmbeddingSpace& get_src_emb() {
        if (!src_emb) src_emb = load_embeddings(cfg.src_emb, LangDomainTag(cfg.target_lang, cfg.source_domain));
        return *src_emb;
    }
    const EmbeddingSpace& get_tgt_emb() {
        if (!tgt_emb) tgt_emb = load_embeddings(cfg.tgt_emb, LangDomainTag(cfg.target_lang, cfg.target_domain));
        return *tgt_emb;
    }
    const DriftTable& get_drift() {
        if (!drift) drift = load_drift_table(artifact("drift.tsv"));
        return *drift;
    }
};

struct StageOutcome {
    std::vector<std::string> warnings;
    nlohmann::ordered_json extra;  // merged into the stage record (e.g. chosen gamma)
};

class StageRunner {
public:
    StageRunner(bool resume, const nlohmann::ordered_json* prev_manifest)
        : resume_(resume), prev_(prev_manifest) {}

    nlohmann::ordered_json stages = nlohmann::ordered_json::array();

    void run(const std::string& name, const std::vector<std::string>& input_paths,
             const std::string& params, const std::vector<std::string>& output_paths,
             const std::function<StageOutcome()>& fn) {
        auto t0 = std::chrono::steady_clock::now();
        nlohmann::ordered_json inputs;
        for (const auto& path : input_paths) inputs[path] = digest_file(path);
        inputs["[params]"] = fnv1a_hex(params);

        if (const nlohmann::ordered_json* prev = previous_stage(name)) {
            if ((*prev)["inputs"] == inputs && outputs_intact(*prev)) {
                nlohmann::ordered_json record = *prev;
                record["skipped"] = true;
                record["wall_ms"] = elapsed_ms(t0);
                stages.push_back(std::move(record));
                return;
            }
        }

        StageOutcome outcome;
        try {
            outcome = fn();
        } catch (const StageError&) {
            throw;
        } catch (const std::exception& e) {
            throw StageError(name, e.what());
        }

        nlohmann::ordered_json record;
        record["name"] = name;
        record["skipped"] = false;
        record["inputs"] = std::move(inputs);
        nlohmann::ordered_json outputs;
        for (const auto& path : output_paths) {
            if (!fs::exists(path)) throw StageError(name, "expected output missing: " + path);
            outputs[path] = digest_file(path);
        }
        record["outputs"] = std::move(outputs);
        record["warnings"] = outcome.warnings;
        for (auto& [key, value] : outcome.extra.items()) record[key] = value;
        record["wall_ms"] = elapsed_ms(t0);
        stages.push_back(std::move(record));
    }

private:
    bool resume_;
    const nlohmann::ordered_json* prev_;

    static int64_t elapsed_ms(std::chrono::steady_clock::time_point t0) {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - t0)
            .count();
    }

    const nlohmann::ordered_json* previous_stage(const std::string& name) const {
        if (!resume_ || !prev_ || !prev_->contains("stages")) return nullptr;
        for (const auto& stage : (*prev_)["stages"]) {
            if (stage.contains("name") && stage["name"] == name && stage.contains("inputs") &&
                stage.contains("outputs")) {
                return &stage;
            }
        }
        return nullptr;
    }

    static bool outputs_intact(const nlohmann::ordered_json& stage) {
        for (const auto& [path, digest] : stage["outputs"].items()) {
            if (!fs::exists(path)) return false;
            if (digest_file(path) != digest.get<std::string>()) return false;
        }
        return true;
    }
};

std::string tuning_params(const RunConfig& c) {
    return "gamma_grid=" + grid_to_string(c.gamma_grid) + ";folds=" + std::to_string(c.folds) +
           ";l2=" + fmt_g(c.l2, 17) + ";tol=" + fmt_g(c.tol, 17) +
           ";max_iters=" + std::to_string(c.max_iters) + ";seed=" + std::to_string(c.seed);
}

std::string policy_params(const RunConfig& c) {
    return std::string("lowercase=") + (c.policy.lowercase ? "1" : "0") +
           ";strip_punctuation=" + (c.policy.strip_punctuation ? "1" : "0") +
           ";min_token_length=" + std::to_string(c.policy.min_token_length);
}

}  // namespace

nlohmann::ordered_json run_pipeline(const RunConfig& cfg, bool resume) {
    std::vector<std::string> violations = validate_config(cfg);
    if (!violations.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations) msg += "\n  - " + v;
        throw Error(msg);
    }
    fs::create_directories(cfg.out_dir);

    PipelineState state(cfg);
    nlohmann::ordered_json prev;
    const std::string manifest_path = state.artifact("manifest.json");
    if (resume && fs::exists(manifest_path)) {
        try {
            prev = nlohmann::ordered_json::parse(read_text_file(manifest_path));
        } catch (const std::exception&) {
            prev = nlohmann::ordered_json();  // unreadable manifest: run everything
        }
    }
    StageRunner runner(resume, prev.is_null() ? nullptr : &prev);

    const std::string alignments = state.artifact("alignments.pharaoh");
    const std::string ttable = state.artifact("ttable.tsv");
    const std::string unisent_path = state.artifact("unisent.tsv");
    const std::string drift_path = state.artifact("drift.tsv");
    const std::string model_path = state.artifact("model.txt");

    runner.run(
        "align", {cfg.corpus},
        policy_params(cfg) + ";em_iterations=" + std::to_string(cfg.em_iterations) +
            ";diagonal_tension=" + fmt_g(cfg.diagonal_tension, 17) +
            ";use_null=" + (cfg.use_null ? "1" : "0"),
        {alignments, ttable}, [&]() {
            StageOutcome outcome;
            const ParallelCorpus& corpus = state.get_corpus();
            if (corpus.dropped_pairs > 0) {
                outcome.warnings.push_back("dropped " + std::to_string(corpus.dropped_pairs) +
                                           " verse pairs with an empty side");
            }
            AlignerConfig acfg;
            acfg.em_iterations = cfg.em_iterations;
            acfg.diagonal_tension = cfg.diagonal_tension;
            acfg.use_null = cfg.use_null;
            acfg.workers = cfg.workers;
            TrainResult result = train_aligner(corpus, acfg);
            std::vector<AlignmentLink> links = viterbi_align(result.table, corpus, acfg);
            save_pharaoh_alignments(alignments, links, corpus.pairs.size());
            save_translation_table(ttable, result.table);
            return outcome;
        });

    runner.run("project", {cfg.corpus, cfg.seeds, alignments},
               policy_params(cfg) + ";q=" + fmt_g(cfg.q, 17), {unisent_path}, [&]() {
                   StageOutcome outcome;
                   const ParallelCorpus& corpus = state.get_corpus();
                   SeedLexicon seeds =
                       load_lexicon(cfg.seeds, LangDomainTag(cfg.source_lang, "seed"));
                   std::vector<AlignmentLink> links = load_pharaoh_alignments(alignments, corpus);
                   AssociationTable table = substitute_and_count(links, corpus, seeds);
                   SeedLexicon induced =
                       extract_lexicon(table, cfg.q, LangDomainTag(cfg.target_lang, "induced"));
                   save_lexicon(unisent_path, induced);
                   state.unisent = std::move(induced);
                   return outcome;
               });

    {
        std::vector<std::string> inputs = {unisent_path, cfg.src_emb, cfg.tgt_emb};
        std::string params = "epsilon=" + fmt_g(cfg.epsilon, 17) +
                             ";lambda_floor=" + fmt_g(cfg.lambda_floor, 17) +
                             ";cap=" + std::to_string(cfg.cap) + ";" + tuning_params(cfg);
        if (cfg.cap > 0) {
            inputs.push_back(cfg.corpus);
            params += ";" + policy_params(cfg);
        }
        runner.run("drift", inputs, params, {drift_path}, [&]() {
            StageOutcome outcome;
            const SeedLexicon& unisent = state.get_unisent();
            const EmbeddingSpace& src = state.get_src_emb();
            const EmbeddingSpace& tgt = state.get_tgt_emb();
            for (const EmbeddingSpace* space : {&src, &tgt}) {
                if (space->duplicates_dropped > 0) {
                    outcome.warnings.push_back(space->tag.str() + ": kept first of " +
                                               std::to_string(space->duplicates_dropped) +
                                               " duplicate embedding words");
                }
                if (space->zero_vectors_dropped > 0) {
                    outcome.warnings.push_back(space->tag.str() + ": dropped " +
                                               std::to_string(space->zero_vectors_dropped) +
                                               " zero embedding vectors");
                }
            }
            DriftConfig dcfg;
            dcfg.gamma = 1.0;
            dcfg.epsilon = cfg.epsilon;
            dcfg.lambda_floor = cfg.lambda_floor;
            dcfg.workers = cfg.workers;
            Vocabulary freq;
            const Vocabulary* freq_ptr = nullptr;
            if (cfg.cap > 0) {
                dcfg.cap = cfg.cap;
                freq = build_vocab(state.get_corpus(), CorpusSide::Target);
                freq_ptr = &freq;
            }
            DriftTable base = compute_drift_table(unisent, src, tgt, dcfg, freq_ptr);
            if (!base.skipped_words.empty()) {
                outcome.warnings.push_back(std::to_string(base.skipped_words.size()) +
                                           " lexicon words missing from an embedding space");
            }
            double gamma = cfg.gamma_grid[0];
            if (cfg.gamma_grid.size() > 1) {
                TuneConfig tune;
                tune.grid = cfg.gamma_grid;
                tune.folds = cfg.folds;
                tune.seed = cfg.seed;
                tune.l2 = cfg.l2;
                tune.tol = cfg.tol;
                tune.max_iters = cfg.max_iters;
                tune.lambda_floor = cfg.lambda_floor;
                tune.workers = cfg.workers;
                TuneResult tuned = tune_weight_exponent(unisent, base, tgt, tune);
                gamma = tuned.best_gamma;
                nlohmann::ordered_json cv;
                for (size_t i = 0; i < tuned.grid.size(); ++i) {
                    cv[fmt_g(tuned.grid[i], 17)] = tuned.mean_macro_f1[i];
                }
                outcome.extra["cv_mean_macro_f1"] = std::move(cv);
            }
            outcome.extra["gamma"] = gamma;
            DriftTable final_table = reweight_drift_table(base, gamma, cfg.lambda_floor);
            save_drift_table(drift_path, final_table);
            state.drift = std::move(final_table);
            return outcome;
        });
    }

    runner.run("train", {unisent_path, drift_path, cfg.tgt_emb},
               "l2=" + fmt_g(cfg.l2, 17) + ";tol=" + fmt_g(cfg.tol, 17) +
                   ";max_iters=" + std::to_string(cfg.max_iters),
               {model_path}, [&]() {
                   StageOutcome outcome;
                   const SeedLexicon& unisent = state.get_unisent();
                   const EmbeddingSpace& tgt = state.get_tgt_emb();
                   const DriftTable& drift = state.get_drift();
                   std::vector<LabeledSample> samples;
                   size_t dropped = 0;
                   for (const auto& [word, entry] : unisent.entries) {
                       const std::vector<double>* vec = tgt.find(word);
                       if (!vec) {
                           ++dropped;
                           continue;
                       }
                       LabeledSample s;
                       s.word = word;
                       s.features = *vec;
                       s.label = entry.polarity;
                       const DriftEntry* de = drift.find(word);
                       s.weight = de ? de->sample_weight : 1.0;
                       samples.push_back(std::move(s));
                   }
                   if (dropped > 0) {
                       outcome.warnings.push_back(std::to_string(dropped) +
                                                  " lexicon words missing from the target embedding");
                   }
                   LogRegModel model = train_weighted_logreg(samples, cfg.l2, cfg.tol, cfg.max_iters);
                   save_model(model_path, model);
                   return outcome;
               });

    const std::string eval_json = state.artifact("eval_words.json");
    const std::string eval_tsv = state.artifact("eval_words.tsv");
    runner.run("eval", {unisent_path, drift_path, cfg.gold, cfg.tgt_emb},
               "test_fraction=" + fmt_g(cfg.test_fraction, 17) + ";seed=" + std::to_string(cfg.seed) +
                   ";l2=" + fmt_g(cfg.l2, 17) + ";tol=" + fmt_g(cfg.tol, 17) +
                   ";max_iters=" + std::to_string(cfg.max_iters),
               {eval_json, eval_tsv}, [&]() {
                   StageOutcome outcome;
                   const SeedLexicon& unisent = state.get_unisent();
                   const EmbeddingSpace& tgt = state.get_tgt_emb();
                   const DriftTable& drift = state.get_drift();
                   SeedLexicon gold = load_lexicon(cfg.gold, LangDomainTag(cfg.target_lang, "gold"));
                   SplitConfig scfg;
                   scfg.test_fraction = cfg.test_fraction;
                   scfg.seed = cfg.seed;
                   SplitSpec split = split_datasets(unisent, gold, tgt, scfg);
                   if (split.downsampled_words > 0) {
                       outcome.warnings.push_back("down-sampled " +
                                                  std::to_string(split.downsampled_words) +
                                                  " words to match train-set sizes");
                   }
                   EvalConfig ecfg;
                   ecfg.l2 = cfg.l2;
                   ecfg.tol = cfg.tol;
                   ecfg.max_iters = cfg.max_iters;
                   ecfg.workers = cfg.workers;
                   ecfg.seed = cfg.seed;
                   std::vector<EvalReport> reports = evaluate_word_sentiment(split, tgt, &drift, ecfg);
                   for (const auto& r : reports) {
                       if (r.dropped_test > 0) {
                           outcome.warnings.push_back(std::to_string(r.dropped_test) +
                                                      " test words missing from the embedding");
                           break;
                       }
                   }
                   save_eval_reports(eval_json, eval_tsv, reports);
                   return outcome;
               });

    if (!cfg.emoticons.empty()) {
        const std::string emo_json = state.artifact("eval_emoticons.json");
        const std::string emo_tsv = state.artifact("eval_emoticons.tsv");
        runner.run("eval_emoticons", {unisent_path, drift_path, cfg.emoticons, cfg.tgt_emb},
                   "l2=" + fmt_g(cfg.l2, 17) + ";tol=" + fmt_g(cfg.tol, 17) +
                       ";max_iters=" + std::to_string(cfg.max_iters) + ";seed=" + std::to_string(cfg.seed),
                   {emo_json, emo_tsv}, [&]() {
                       StageOutcome outcome;
                       const SeedLexicon& unisent = state.get_unisent();
                       const EmbeddingSpace& tgt = state.get_tgt_emb();
                       const DriftTable& drift = state.get_drift();
                       SeedLexicon emoticons =
                           load_lexicon(cfg.emoticons, LangDomainTag(cfg.target_lang, "emoticons"));
                       EvalConfig ecfg;
                       ecfg.l2 = cfg.l2;
                       ecfg.tol = cfg.tol;
                       ecfg.max_iters = cfg.max_iters;
                       ecfg.workers = cfg.workers;
                       ecfg.seed = cfg.seed;
                       std::vector<EvalReport> reports =
                           evaluate_emoticons(unisent, &drift, tgt, emoticons, ecfg);
                       if (!reports.empty() && reports[0].dropped_test > 0) {
                           outcome.warnings.push_back(std::to_string(reports[0].dropped_test) +
                                                      " emoticons missing from the embedding");
                       }
                       save_eval_reports(emo_json, emo_tsv, reports);
                       return outcome;
                   });
    }

    nlohmann::ordered_json manifest;
    manifest["tool"] = "lexidrift";
    manifest["version"] = kToolVersion;
    manifest["config"] = config_to_json(cfg);
    manifest["stages"] = std::move(runner.stages);
    write_text_file(manifest_path, manifest.dump(2) + "\n");
    return manifest;
}

}  // namespace lexidrift
