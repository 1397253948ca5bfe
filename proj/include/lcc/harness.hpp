#pragma once

#include "lcc/chain_xor.hpp"
#include "lcc/decoder_model.hpp"
#include "lcc/spectral_refuter.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcc {

// Raised for anything wrong with the configuration or its input files (exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum ExitCode { kExitPass = 0, kExitCheckFailed = 1, kExitConfig = 2, kExitBudget = 3 };

struct Budgets {
    std::uint64_t max_chains = 5'000'000;
    std::uint64_t max_subsets = 2'000'000;
    std::uint64_t max_entries = 20'000'000;
};

struct ExperimentConfig {
    std::string pipeline;  // "design" or "nonlinear"
    // design
    int t = 2;
    // shared
    std::optional<int> r;  // nonlinear: defaults to the clamp
    int ell = 3;
    Rational d = 2, epsilon = 0, eta = Rational(1, 5), gamma = 64;
    std::optional<double> slack;
    std::optional<Rational> delta;  // only for the lemma-hypothesis check
    std::uint64_t seed = 0;
    Budgets budgets;
    bool monte_carlo = false;
    std::uint64_t mc_samples = 10000;
    std::size_t chain_samples = 1000;
    std::size_t messages = 20;
    bool hyper_tail = true;
    bool mimic_lemma_hypothesis = false;
    bool strict_regime = false;
    // nonlinear inputs: either a toy zoo name or a pair of files
    std::string zoo;
    std::string decoder_file, code_file;
    std::string out_dir;

    // resolved at load time
    std::optional<DecoderTree> tree;
    std::optional<Code> code;
    Rational zoo_epsilon = 0;
    int resolved_r = 0;
    int padded_n = 0;
    std::vector<std::string> notes;  // graceful adjustments such as r clamping
};

// Parses, loads input files and checks every constraint; throws ConfigError.
ExperimentConfig load_config(const nlohmann::json& j, const std::string& base_dir = ".");
ExperimentConfig load_config_file(const std::string& path);
nlohmann::ordered_json config_echo(const ExperimentConfig& c);

struct CheckResult {
    std::string name;
    bool pass = false;
    nlohmann::ordered_json value;
};

struct StageResult {
    std::string name;
    bool pass = true;
    std::vector<CheckResult> checks;
    nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
    std::string diagnostics;
    double millis = 0;
};

struct RunReport {
    nlohmann::ordered_json config;
    std::vector<StageResult> stages;
    std::vector<std::string> artifacts;
    std::vector<std::string> certificates;  // one JSON object per line
    bool budget_exceeded = false;
    std::string aborted_at;

    bool pass() const;
    int exit_code() const;
};

RunReport pipeline_design(const ExperimentConfig& c);
RunReport pipeline_nonlinear(const ExperimentConfig& c);
RunReport run_pipeline(const ExperimentConfig& c);

// Reports without timing are byte-identical across runs with the same config.
std::string report_json(const RunReport& r, bool with_timing = false);
constexpr const char* kReportCsvVersion = "# lcckit report v1";
std::string report_csv(const RunReport& r);
std::string report_csv_from_json(const std::string& report_text);

}  // namespace lcc
