#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexidrift/common.hpp"
#include "lexidrift/corpus.hpp"

#include "json.hpp"

namespace lexidrift {

// Declarative run configuration: key-value text file (`key = value`, `#`
// comments), every key overridable through the LEXIDRIFT_<KEY> environment
// variable.
struct RunConfig {
    // input/output paths
    std::string corpus;
    std::string seeds;
    std::string gold;
    std::string emoticons;  // optional; enables the emoticon eval stage
    std::string src_emb;
    std::string tgt_emb;
    std::string out_dir;

    // language/domain labels
    std::string source_lang = "src";
    std::string target_lang = "tgt";
    std::string source_domain = "source";
    std::string target_domain = "target";

    // tokenization
    TokenizationPolicy policy;

    // aligner
    int em_iterations = 5;
    double diagonal_tension = 0.0;
    bool use_null = true;

    // projection
    double q = 0.05;

    // drift + classifier
    std::vector<double> gamma_grid = {0.0, 0.5, 1.0, 2.0};
    int folds = 5;
    double l2 = 1.0;
    double tol = 1e-6;
    int max_iters = 1000;
    double epsilon = 1e-10;
    double lambda_floor = 1e-6;
    size_t cap = 0;  // 0 = unlimited shared vocabulary

    // evaluation
    double test_fraction = 0.2;

    // global
    uint64_t seed = 42;
    int workers = 1;
};

// Parses the config file and applies environment overrides. Unknown keys and
// unparseable values are errors; range checking is validate_config's job.
RunConfig load_run_config(const std::string& path);

// Applies LEXIDRIFT_* environment overrides to a default-constructed or
// loaded config (load_run_config already calls this).
void apply_env_overrides(RunConfig& config);

// Every violation, not just the first: missing/unreadable input files,
// out-of-range parameters, bad tags. Empty result means the config is valid.
std::vector<std::string> validate_config(const RunConfig& config);

// A stage failure; carries the stage name for exit-code mapping.
struct StageError : Error {
    std::string stage;
    StageError(const std::string& stage_name, const std::string& cause)
        : Error("stage " + stage_name + ": " + cause), stage(stage_name) {}
};

// Runs align -> project -> drift -> train -> eval [-> eval_emoticons],
// writing every artifact plus manifest.json into config.out_dir. With
// `resume`, stages whose input digests match the previous manifest and whose
// outputs still digest-check are skipped. Returns the manifest document.
nlohmann::ordered_json run_pipeline(const RunConfig& config, bool resume);

extern const char* kToolVersion;

}  // namespace lexidrift
