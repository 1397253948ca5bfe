#include "doctest.h"

#include "lcc/harness.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace lcc;
using nlohmann::json;

namespace {

ExperimentConfig cfg(const std::string& text) { return load_config(json::parse(text)); }

}  // namespace

TEST_CASE("config rejects bad fields at parse time") {
    CHECK_THROWS_AS(cfg(R"({"pipeline": "design", "t": 2, "r": 3, "ell": 2, "seed": 1})"), ConfigError);  // ell < r
    CHECK_THROWS_AS(cfg(R"({"pipeline": "design", "t": 2})"), ConfigError);                               // no seed
    CHECK_THROWS_AS(cfg(R"({"pipeline": "design", "seed": 1, "tt": 2})"), ConfigError);                   // typo
    CHECK_THROWS_AS(cfg(R"({"pipeline": "design", "seed": 1, "t": 9})"), ConfigError);
    CHECK_THROWS_AS(cfg(R"({"pipeline": "other", "seed": 1})"), ConfigError);
    CHECK_THROWS_AS(cfg(R"({"pipeline": "design", "seed": 1, "gamma": 0})"), ConfigError);
    CHECK_THROWS_AS(cfg(R"({"pipeline": "design", "seed": 1, "budgets": {"max_rows": 3}})"), ConfigError);
    CHECK_THROWS_AS(cfg(R"({"pipeline": "design", "seed": 1, "t": 2, "r": 2, "ell": 3, "strict_regime": true})"),
                    ConfigError);  // 6 > 16/10
    CHECK_THROWS_AS(cfg(R"({"pipeline": "design", "seed": 1, "mimic_lemma_hypothesis": true})"), ConfigError);
}

TEST_CASE("t = 1 clamps r to one link") {
    auto c = cfg(R"({"pipeline": "design", "t": 1, "r": 3, "ell": 2, "seed": 1})");
    CHECK(c.resolved_r == 1);
    REQUIRE(c.notes.size() == 1);
    auto rep = run_pipeline(c);
    CHECK(rep.pass());
    CHECK(rep.exit_code() == kExitPass);
}

TEST_CASE("decimal literals are read exactly") {
    auto c = cfg(R"({"pipeline": "nonlinear", "zoo": "hadamard-noisy", "epsilon": 0.1, "eta": 0.2, "seed": 1,
                     "hyper_tail": false})");
    CHECK(c.epsilon == Rational(1, 10));
    CHECK(c.eta == Rational(1, 5));
    // floor((1 - 1/5) / (2/10)) = 4 counts r + 1, so r = 3
    CHECK(c.resolved_r == 3);
    CHECK_THROWS_AS(cfg(R"({"pipeline": "nonlinear", "zoo": "hadamard-noisy", "epsilon": "1/10", "eta": "1/5",
                            "r": 4, "seed": 1, "hyper_tail": false})"),
                    ConfigError);
}

TEST_CASE("nonlinear inputs are checked while loading") {
    CHECK_THROWS_AS(cfg(R"({"pipeline": "nonlinear", "decoder": "/nonexistent/dec.json", "code": "/nonexistent/c.json",
                            "seed": 1})"),
                    ConfigError);
    CHECK_THROWS_AS(cfg(R"({"pipeline": "nonlinear", "zoo": "no-such", "seed": 1})"), ConfigError);
    CHECK_THROWS_AS(cfg(R"({"pipeline": "nonlinear", "seed": 1})"), ConfigError);
    // d^(r+1) >= n' is enforced when the hyper tail is refuted: 2^2 < 16
    CHECK_THROWS_AS(cfg(R"({"pipeline": "nonlinear", "zoo": "design-t1", "r": 1, "ell": 1, "d": 2, "seed": 1})"),
                    ConfigError);
}

TEST_CASE("decoder and code files load relative to the config") {
    namespace fs = std::filesystem;
    auto dir = fs::temp_directory_path() / "lcckit_harness_test";
    fs::create_directories(dir);
    ToyCase tc;
    for (auto& z : toy_zoo())
        if (z.name == "design-t1") tc = z;
    std::ofstream(dir / "dec.json") << tree_to_json(tc.tree);
    std::ofstream(dir / "code.json") << code_to_json(tc.code);
    std::ofstream(dir / "run.json") << R"({"pipeline": "nonlinear", "decoder": "dec.json", "code": "code.json",
        "r": 1, "ell": 1, "d": 4, "seed": 2, "messages": 4})";
    auto c = load_config_file((dir / "run.json").string());
    CHECK(c.padded_n == 16);
    auto rep = run_pipeline(c);
    CHECK(rep.pass());
    fs::remove_all(dir);
}

TEST_CASE("perfect decoder pipeline reaches exact completeness") {
    auto rep = run_pipeline(cfg(R"({"pipeline": "nonlinear", "zoo": "design-t1", "r": 1, "ell": 1, "d": 4, "seed": 3,
                                     "messages": 8})"));
    REQUIRE(rep.pass());
    bool saw = false;
    for (const auto& s : rep.stages)
        if (s.name == "completeness") {
            saw = true;
            CHECK(s.metrics["min_value"] == "3/1");
        }
    CHECK(saw);
    CHECK(rep.certificates.size() == 3);  // two graph tails and one hyper tail
}

TEST_CASE("budget overruns map to exit code 3") {
    auto rep = run_pipeline(cfg(R"({"pipeline": "nonlinear", "zoo": "design-t1", "r": 1, "ell": 1, "d": 4, "seed": 3,
                                     "budgets": {"max_entries": 10}})"));
    CHECK(rep.budget_exceeded);
    CHECK(rep.exit_code() == kExitBudget);
    CHECK(rep.aborted_at == "refute");
}

TEST_CASE("reports are stable and the CSV is versioned") {
    auto c = cfg(R"({"pipeline": "design", "t": 1, "seed": 4, "r": 1, "ell": 2})");
    auto a = run_pipeline(c), b = run_pipeline(c);
    CHECK(report_json(a) == report_json(b));
    auto csv = report_csv(a);
    CHECK(csv.rfind(kReportCsvVersion, 0) == 0);
    CHECK(csv.find("build,check,n = 4^t,4,1") != std::string::npos);
    CHECK(report_csv_from_json(report_json(a, true)) == csv);
    auto j = json::parse(report_json(a));
    CHECK(j["pass"] == true);
    CHECK(j["stages"].size() == 5);
}
