#include "lcc/harness.hpp"

#include "lcc/design_codes.hpp"
#include "lcc/design_kikuchi.hpp"
#include "lcc/linear_chains.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

namespace lcc {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Rational get_rational(const nlohmann::json& v, const std::string& key) {
    try {
        if (v.is_string()) return parse_rat(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (v.is_number_float()) {
            // decimal literals are read exactly as written, e.g. 0.1 -> 1/10
            std::string s = v.dump();
            auto dot = s.find('.');
            if (s.find_first_of("eE") != std::string::npos || dot == std::string::npos) return Rational(v.get<double>());
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            Integer num(digits), den = ipow(Integer(10), s.size() - dot - 1);
            Rational q(num, den);
            q.canonicalize();
            return q;
        }
    } catch (const std::exception&) {
    }
    throw ConfigError("field '" + key + "' must be a number or \"p/q\"");
}

template <class T>
T get_int(const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer()) throw ConfigError("field '" + key + "' must be an integer");
    auto x = v.get<long long>();
    if (x < 0) throw ConfigError("field '" + key + "' must be non-negative");
    return static_cast<T>(x);
}

bool get_bool(const nlohmann::json& v, const std::string& key) {
    if (!v.is_boolean()) throw ConfigError("field '" + key + "' must be true or false");
    return v.get<bool>();
}

std::string get_str(const nlohmann::json& v, const std::string& key) {
    if (!v.is_string()) throw ConfigError("field '" + key + "' must be a string");
    return v.get<std::string>();
}

const std::set<std::string> kKnownKeys = {
    "pipeline", "t", "r", "ell", "d", "epsilon", "eta", "gamma", "slack", "delta", "seed", "budgets", "mode",
    "mc_samples", "chain_samples", "messages", "hyper_tail", "mimic_lemma_hypothesis", "strict_regime", "zoo",
    "decoder", "code", "out_dir"};

}  // namespace

ExperimentConfig load_config(const nlohmann::json& j, const std::string& base_dir) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!kKnownKeys.count(it.key())) throw ConfigError("unknown config field '" + it.key() + "'");
    ExperimentConfig c;
    if (!j.contains("pipeline")) throw ConfigError("missing field 'pipeline'");
    c.pipeline = get_str(j["pipeline"], "pipeline");
    if (c.pipeline != "design" && c.pipeline != "nonlinear") throw ConfigError("pipeline must be design or nonlinear");
    if (!j.contains("seed")) throw ConfigError("missing field 'seed' (every run is seeded)");
    c.seed = get_int<std::uint64_t>(j["seed"], "seed");
    if (j.contains("t")) c.t = get_int<int>(j["t"], "t");
    if (j.contains("r")) c.r = get_int<int>(j["r"], "r");
    if (j.contains("ell")) c.ell = get_int<int>(j["ell"], "ell");
    if (j.contains("d")) c.d = get_rational(j["d"], "d");
    bool eps_given = j.contains("epsilon");
    if (eps_given) c.epsilon = get_rational(j["epsilon"], "epsilon");
    if (j.contains("eta")) c.eta = get_rational(j["eta"], "eta");
    if (j.contains("gamma")) c.gamma = get_rational(j["gamma"], "gamma");
    if (j.contains("slack")) {
        if (!j["slack"].is_number()) throw ConfigError("field 'slack' must be a number");
        c.slack = j["slack"].get<double>();
    }
    if (j.contains("delta")) c.delta = get_rational(j["delta"], "delta");
    if (j.contains("budgets")) {
        const auto& b = j["budgets"];
        if (!b.is_object()) throw ConfigError("field 'budgets' must be an object");
        for (auto it = b.begin(); it != b.end(); ++it) {
            if (it.key() == "max_chains") c.budgets.max_chains = get_int<std::uint64_t>(it.value(), it.key());
            else if (it.key() == "max_subsets") c.budgets.max_subsets = get_int<std::uint64_t>(it.value(), it.key());
            else if (it.key() == "max_entries") c.budgets.max_entries = get_int<std::uint64_t>(it.value(), it.key());
            else throw ConfigError("unknown budget '" + it.key() + "'");
        }
    }
    if (j.contains("mode")) {
        auto m = get_str(j["mode"], "mode");
        if (m != "exact" && m != "mc") throw ConfigError("mode must be exact or mc");
        c.monte_carlo = m == "mc";
    }
    if (j.contains("mc_samples")) c.mc_samples = get_int<std::uint64_t>(j["mc_samples"], "mc_samples");
    if (j.contains("chain_samples")) c.chain_samples = get_int<std::size_t>(j["chain_samples"], "chain_samples");
    if (j.contains("messages")) c.messages = get_int<std::size_t>(j["messages"], "messages");
    if (j.contains("hyper_tail")) c.hyper_tail = get_bool(j["hyper_tail"], "hyper_tail");
    if (j.contains("mimic_lemma_hypothesis"))
        c.mimic_lemma_hypothesis = get_bool(j["mimic_lemma_hypothesis"], "mimic_lemma_hypothesis");
    if (j.contains("strict_regime")) c.strict_regime = get_bool(j["strict_regime"], "strict_regime");
    if (j.contains("zoo")) c.zoo = get_str(j["zoo"], "zoo");
    if (j.contains("decoder")) c.decoder_file = get_str(j["decoder"], "decoder");
    if (j.contains("code")) c.code_file = get_str(j["code"], "code");
    if (j.contains("out_dir")) c.out_dir = get_str(j["out_dir"], "out_dir");

    if (c.gamma <= 0) throw ConfigError("gamma must be positive");
    if (c.d <= 0) throw ConfigError("d must be positive");
    if (c.eta < 0 || c.eta >= 1) throw ConfigError("eta must lie in [0, 1)");
    if (c.epsilon < 0 || c.epsilon >= Rational(1, 2)) throw ConfigError("epsilon must lie in [0, 1/2)");
    if (c.ell < 1) throw ConfigError("ell must be at least 1");
    if (c.monte_carlo && c.mc_samples == 0) throw ConfigError("mc_samples must be positive");

    int n = 0;
    if (c.pipeline == "design") {
        if (c.t < 1 || c.t > 4) throw ConfigError("t must be in 1..4");
        n = 1 << (2 * c.t);
        c.resolved_r = c.r.value_or(2);
        if (c.resolved_r < 1) throw ConfigError("r must be at least 1");
        if (c.t == 1 && c.resolved_r > 1) {
            c.notes.push_back("t = 1 has no chains beyond one link; r clamped from " + std::to_string(c.resolved_r) +
                              " to 1");
            c.resolved_r = 1;
        }
        if (c.ell < c.resolved_r) throw ConfigError("ell must be at least r");
        if (c.ell > n) throw ConfigError("ell must be at most n");
    } else {
        if (!c.zoo.empty() && (!c.decoder_file.empty() || !c.code_file.empty()))
            throw ConfigError("give either zoo or decoder/code files, not both");
        if (!c.zoo.empty()) {
            bool found = false;
            for (auto& tc : toy_zoo())
                if (tc.name == c.zoo) {
                    c.tree = tc.tree;
                    c.code = tc.code;
                    c.zoo_epsilon = tc.epsilon;
                    found = true;
                }
            if (!found) throw ConfigError("unknown zoo decoder '" + c.zoo + "'");
            if (!eps_given) c.epsilon = c.zoo_epsilon;
            if (c.epsilon >= Rational(1, 2)) throw ConfigError("epsilon must lie in [0, 1/2)");
        } else {
            if (c.decoder_file.empty() || c.code_file.empty()) throw ConfigError("nonlinear pipeline needs zoo or decoder and code");
            auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? p : (fs::path(base_dir) / p).string(); };
            try {
                c.tree = tree_from_json(read_file(resolve(c.decoder_file)));
                c.code = code_from_json(read_file(resolve(c.code_file)));
                validate_tree(*c.tree);
            } catch (const ConfigError&) {
                throw;
            } catch (const std::exception& e) {
                throw ConfigError(std::string("bad input file: ") + e.what());
            }
        }
        if (c.tree->n != c.code->n) throw ConfigError("decoder and code lengths differ");
        n = 4 * c.code->n;
        c.padded_n = n;
        int clamp = clamp_r(c.epsilon, c.eta, n);
        c.resolved_r = c.r.value_or(clamp);
        if (c.resolved_r > clamp) throw ConfigError("r exceeds min(floor((1-eta)/(2 eps)) - 1, log2 n')");
        if (c.ell > n) throw ConfigError("ell must be at most n'");
        if (c.hyper_tail) {
            Integer lhs = 1;
            for (int i = 0; i <= c.resolved_r; ++i) lhs *= Integer(c.d.get_num());
            Integer rhs = n * ipow(Integer(c.d.get_den()), c.resolved_r + 1);
            if (lhs < rhs) throw ConfigError("hyper-tail refutation needs d^(r+1) >= n'");
        }
    }
    if (c.mimic_lemma_hypothesis) {
        if (!c.delta || *c.delta <= 0) throw ConfigError("mimic_lemma_hypothesis needs a positive delta");
        if (Rational(c.ell) < 6 * c.d * (c.resolved_r + 1) / *c.delta) throw ConfigError("ell must be >= 6 d (r+1) / delta");
    }
    if (c.strict_regime && 10L * c.ell * c.resolved_r > n) throw ConfigError("strict regime needs ell r <= n / 10");
    return c;
}

ExperimentConfig load_config_file(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return load_config(j, fs::path(path).parent_path().string());
}

ojson config_echo(const ExperimentConfig& c) {
    ojson j;
    j["pipeline"] = c.pipeline;
    if (c.pipeline == "design") j["t"] = c.t;
    j["r"] = c.resolved_r;
    j["ell"] = c.ell;
    j["d"] = rat_str(c.d);
    j["epsilon"] = rat_str(c.epsilon);
    j["eta"] = rat_str(c.eta);
    j["gamma"] = rat_str(c.gamma);
    if (c.slack) j["slack"] = *c.slack;
    j["seed"] = c.seed;
    j["budgets"] = {{"max_chains", c.budgets.max_chains},
                    {"max_subsets", c.budgets.max_subsets},
                    {"max_entries", c.budgets.max_entries}};
    j["mode"] = c.monte_carlo ? "mc" : "exact";
    if (c.pipeline == "nonlinear") {
        j["source"] = c.zoo.empty() ? c.decoder_file + " + " + c.code_file : "zoo:" + c.zoo;
        j["padded_n"] = c.padded_n;
        j["messages"] = c.messages;
        j["hyper_tail"] = c.hyper_tail;
    } else {
        j["chain_samples"] = c.chain_samples;
        if (c.monte_carlo) j["mc_samples"] = c.mc_samples;
    }
    j["notes"] = c.notes;
    return j;
}

bool RunReport::pass() const {
    if (budget_exceeded || !aborted_at.empty()) return false;
    for (const auto& s : stages)
        if (!s.pass) return false;
    return true;
}

int RunReport::exit_code() const {
    if (budget_exceeded) return kExitBudget;
    return pass() ? kExitPass : kExitCheckFailed;
}

namespace {

// Runs stages in order, stopping at the first failure.
class StageRunner {
public:
    explicit StageRunner(RunReport& rep) : rep_(rep) {}

    template <class F>
    bool run(const std::string& name, F&& body) {
        if (stopped_) return false;
        StageResult st;
        st.name = name;
        auto t0 = std::chrono::steady_clock::now();
        try {
            body(st);
        } catch (const BudgetExceeded& e) {
            st.pass = false;
            st.diagnostics = std::string("budget exceeded: ") + e.what();
            rep_.budget_exceeded = true;
        } catch (const std::exception& e) {
            st.pass = false;
            st.diagnostics = e.what();
        }
        for (const auto& ch : st.checks)
            if (!ch.pass) {
                st.pass = false;
                if (st.diagnostics.empty()) st.diagnostics = "check failed: " + ch.name;
            }
        st.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep_.stages.push_back(st);
        if (!st.pass) {
            stopped_ = true;
            rep_.aborted_at = name;
        }
        return st.pass;
    }

private:
    RunReport& rep_;
    bool stopped_ = false;
};

void check(StageResult& st, const std::string& name, bool ok, ojson value = nullptr) {
    st.checks.push_back({name, ok, std::move(value)});
}

void write_artifact(const ExperimentConfig& c, RunReport& rep, const std::string& name, const std::string& text) {
    if (c.out_dir.empty()) return;
    fs::create_directories(c.out_dir);
    std::ofstream out(fs::path(c.out_dir) / name);
    out << text;
    rep.artifacts.push_back(name);
}

}  // namespace

RunReport pipeline_design(const ExperimentConfig& c) {
    RunReport rep;
    rep.config = config_echo(c);
    StageRunner run(rep);
    const int n = 1 << (2 * c.t);
    const int r = c.resolved_r;
    DesignLcc lcc;
    MatchingFamily m;
    std::mt19937_64 rng(c.seed);

    run.run("build", [&](StageResult& st) {
        lcc = build_rm_design(c.t, scaled_budget(c.budgets.max_subsets));
        auto v = verify_design(lcc.design);
        st.metrics["n"] = lcc.design.n;
        st.metrics["blocks"] = lcc.design.blocks.size();
        check(st, "n = 4^t", lcc.design.n == n, lcc.design.n);
        check(st, "pair coverage", v.pass, v.uncovered_pairs + v.multiply_covered_pairs);
        check(st, "blocks = C(n,2)/6", Integer(lcc.design.blocks.size()) * 6 == binom(n, 2), lcc.design.blocks.size());
    });
    run.run("verify", [&](StageResult& st) {
        m = derive_matchings(lcc);
        bool perfect = true;
        for (int u = 0; u < n; ++u) perfect = perfect && matching_is_perfect(m, u) && 3 * m.at[u].size() == std::size_t(n - 1);
        std::size_t done = 0;
        auto fails = count_matching_parity_failures(lcc, m, &done);
        auto dim = code_dimension_report(c.t);
        bool some = !dim.matching_rows().empty();
        st.metrics["dim_v"] = dim.dim_v;
        st.metrics["k"] = dim.claimed_k;
        st.metrics["parity_checks"] = done;
        check(st, "matchings perfect", perfect);
        check(st, "parity checks hold", fails == 0, fails);
        check(st, "projection reaching k", some, dim.claimed_k);
        check(st, "dim V >= k", dim.dim_v >= dim.claimed_k, dim.dim_v);
    });
    std::vector<Chain> chains;
    run.run("chains", [&](StageResult& st) {
        ChainOptions opt;
        opt.budget = scaled_budget(c.budgets.max_chains);
        chains = enumerate_chains(m, 0, r, opt);
        auto stats = chain_stats(n, r, chains.size());
        st.metrics["r"] = r;
        st.metrics["chains_at_head_0"] = chains.size();
        st.metrics["lower"] = stats.lower_bound.get_str();
        st.metrics["upper"] = stats.upper_bound.get_str();
        check(st, "chain count window", stats.within(), chains.size());
        PairIndex idx(lcc.design);
        auto links = ordered_links(m);
        std::size_t bad = 0, drawn = 0;
        for (std::size_t s = 0; s < c.chain_samples; ++s) {
            int u = static_cast<int>(rng() % n);
            auto ch = random_chain(links, u, r, rng);
            if (!ch) continue;
            ++drawn;
            if (verify_chain_completeness(lcc, idx, *ch) != ChainVerdict::Pass) ++bad;
        }
        st.metrics["sampled_chains"] = drawn;
        check(st, "sampled chain completeness", bad == 0, bad);
    });
    run.run("moments", [&](StageResult& st) {
        KikuchiParams p{n, r, c.ell, 0};
        auto mr = c.monte_carlo ? monte_carlo_moments(chains, p, c.seed, c.mc_samples) : exact_moments(chains, p);
        st.metrics["mode"] = c.monte_carlo ? "mc" : "exact";
        st.metrics["dL"] = rat_str(mr.dL);
        st.metrics["dR"] = rat_str(mr.dR);
        st.metrics["dL2"] = mr.dL2;
        st.metrics["dR2"] = mr.dR2;
        st.metrics["ratio_left"] = mr.ratioL;
        st.metrics["ratio_right"] = mr.ratioR;
        st.metrics["c_left"] = mr.cL;
        st.metrics["c_right"] = mr.cR;
        st.metrics["eta"] = rat_str(mr.eta);
        check(st, "first moment window", mr.first_moment_ok, mr.c_first);
    });
    run.run("prune_match", [&](StageResult& st) {
        double slack = c.slack.value_or(default_slack(n, r, c.ell));
        auto res = assemble_design_2ldc(lcc, m, r, c.ell, slack);
        auto chk = check_2ldc(res.code);
        st.metrics["slack"] = slack;
        st.metrics["block_length"] = res.code.block_length;
        st.metrics["k"] = res.code.k;
        st.metrics["delta_prime"] = chk.delta_prime;
        check(st, "matchings valid", chk.matchings_valid);
        check(st, "matched edges decode", chk.decode_failures == 0, chk.decode_failures);
        // (1 - o(1)) k <= 2 delta k <= log2 N <= (ell + 1) log2 n
        double k = static_cast<double>(res.code.k);
        double log2N = std::log2(static_cast<double>(res.code.block_length));
        double cap = (c.ell + 1) * std::log2(static_cast<double>(n));
        st.metrics["two_delta_k"] = chk.lhs;
        st.metrics["two_delta_k_over_k"] = k > 0 ? chk.lhs / k : 0.0;
        st.metrics["log2_N"] = log2N;
        st.metrics["ell_plus_1_log2_n"] = cap;
        check(st, "2 delta' k <= log2 N", chk.bound_holds, chk.lhs);
        check(st, "log2 N <= (ell+1) log2 n", log2N <= cap + 1e-12, log2N);
    });
    return rep;
}

RunReport pipeline_nonlinear(const ExperimentConfig& c) {
    RunReport rep;
    rep.config = config_echo(c);
    StageRunner run(rep);
    const DecoderTree& tree = *c.tree;
    const Code& base = *c.code;
    const int r = c.resolved_r;
    const std::uint64_t budget = c.budgets.max_entries;
    CompileReport comp;
    std::mt19937_64 rng(c.seed);

    run.run("compile", [&](StageResult& st) {
        comp = compile_collection(tree, base);
        st.metrics["n_padded"] = comp.col.n;
        st.metrics["k"] = base.k;
        st.metrics["decoder_delta"] = rat_str(comp.delta);
        st.metrics["max_incident"] = rat_str(comp.max_incident);
        check(st, "normalization", comp.normalization_ok);
        check(st, "decoding identity on padded codewords", comp.identity_failures == 0, comp.identity_failures);
        write_artifact(c, rep, "collection.jsonl", collection_to_jsonl(comp.col));
    });
    run.run("smoothness", [&](StageResult& st) {
        st.metrics["c"] = rat_str(comp.c);
        st.metrics["collection_delta"] = rat_str(collection_delta(comp.col));
        check(st, "smoothness constant <= 16", comp.c <= 16, rat_str(comp.c));
    });
    run.run("chains", [&](StageResult& st) {
        bool ok = true;
        Rational worst_h = 0, worst_g = 0;
        for (int t = 1; t <= r + 1; ++t)
            for (int u = 0; u < comp.col.n; ++u) {
                auto cons = weight_conservation(comp.col, u, t);
                ok = ok && cons.pass();
                worst_h = std::max(worst_h, cons.total_H);
                worst_g = std::max(worst_g, cons.total_G);
            }
        st.metrics["r"] = r;
        st.metrics["max_hyper_mass"] = rat_str(worst_h);
        st.metrics["max_graph_mass"] = rat_str(worst_g);
        check(st, "weight conservation (<= 1, <= 4)", ok);
    });

    Code padded = padded_code(base);
    std::vector<int> heads = padded.systematic;
    std::size_t chosen = 0;
    run.run("completeness", [&](StageResult& st) {
        const Rational lower = Rational(base.k) * (1 - 2 * (r + 1) * c.epsilon);
        std::vector<std::size_t> order(padded.codewords.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        if (order.size() > c.messages) {
            std::shuffle(order.begin(), order.end(), rng);
            order.resize(c.messages);
        }
        Rational worst = -1;
        bool exact = true;
        for (std::size_t idx : order) {
            Rational v = chain_sum_value(comp.col, heads, padded.messages[idx], r, padded.codewords[idx]);
            if (worst < 0 || v < worst) {
                worst = v;
                chosen = idx;
            }
            exact = exact && v == base.k;
        }
        st.metrics["messages"] = order.size();
        st.metrics["min_value"] = rat_str(worst);
        st.metrics["lower_bound"] = rat_str(lower);
        check(st, "value >= k(1 - 2(r+1) eps)", worst >= lower, rat_str(worst));
        if (c.epsilon == 0) check(st, "perfect decoder gives exactly k", exact);
    });
    double certified = 0;
    run.run("refute", [&](StageResult& st) {
        const SignVec& b = padded.messages[chosen];
        RefuteParams p;
        p.ell = c.ell;
        p.r = std::max(r, 0);
        p.gamma = c.gamma;
        p.d = c.d;
        p.seed = c.seed;
        p.budget = budget;
        std::string lines;
        bool sound = true;
        for (int t = 1; t <= r + 1; ++t) {
            auto cert = certify_graph_tail(comp.col, heads, b, t, p);
            certified += cert.val_bound;
            sound = sound && cert.sound();
            lines += certificate_json(cert) + "\n";
            rep.certificates.push_back(certificate_json(cert));
        }
        if (c.hyper_tail && r >= 1) {
            auto cert = certify_hyper_tail(comp.col, heads, b, p);
            certified += cert.val_bound;
            sound = sound && cert.sound();
            lines += certificate_json(cert) + "\n";
            rep.certificates.push_back(certificate_json(cert));
        } else {
            // no spectral certificate for Psi: fall back to its absolute mass
            auto psi = build_psi(comp.col, heads, b, r, budget);
            certified += psi.abs_mass().get_d();
            st.metrics["psi_abs_mass"] = rat_str(psi.abs_mass());
        }
        st.metrics["message_index"] = chosen;
        st.metrics["certificates"] = rep.certificates.size();
        st.metrics["certified_total"] = certified;
        check(st, "certificates sound where brute force runs", sound);
        write_artifact(c, rep, "certificates.jsonl", lines);
    });
    run.run("bound", [&](StageResult& st) {
        double factor = Rational(1 - 2 * (r + 1) * c.epsilon).get_d();
        double lower = base.k * factor;
        st.metrics["completeness_lower"] = lower;
        st.metrics["certified_upper"] = certified;
        // k (1 - 2(r+1) eps) <= certified, so k <= certified / (1 - 2(r+1) eps)
        st.metrics["implied_k_max"] = factor > 0 ? certified / factor : -1.0;
        st.metrics["implied_k_max_over_k"] = factor > 0 ? certified / factor / base.k : -1.0;
        check(st, "completeness lower <= certified upper", lower <= certified * (1 + 1e-12) + 1e-12);
    });
    return rep;
}

RunReport run_pipeline(const ExperimentConfig& c) {
    return c.pipeline == "design" ? pipeline_design(c) : pipeline_nonlinear(c);
}

std::string report_json(const RunReport& r, bool with_timing) {
    ojson j;
    j["report_version"] = 1;
    j["config"] = r.config;
    ojson stages = ojson::array();
    for (const auto& s : r.stages) {
        ojson sj;
        sj["stage"] = s.name;
        sj["pass"] = s.pass;
        ojson cj = ojson::array();
        for (const auto& ch : s.checks) cj.push_back({{"check", ch.name}, {"pass", ch.pass}, {"value", ch.value}});
        sj["checks"] = cj;
        sj["metrics"] = s.metrics;
        if (!s.diagnostics.empty()) sj["diagnostics"] = s.diagnostics;
        if (with_timing) sj["millis"] = s.millis;
        stages.push_back(sj);
    }
    j["stages"] = stages;
    j["artifacts"] = r.artifacts;
    j["budget_exceeded"] = r.budget_exceeded;
    j["aborted_at"] = r.aborted_at.empty() ? ojson(nullptr) : ojson(r.aborted_at);
    j["pass"] = r.pass();
    return j.dump(2) + "\n";
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

std::string value_text(const nlohmann::ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

}  // namespace

std::string report_csv_from_json(const std::string& report_text) {
    auto j = nlohmann::ordered_json::parse(report_text);
    std::string out = std::string(kReportCsvVersion) + "\nstage,kind,name,value,pass\n";
    for (const auto& s : j.at("stages")) {
        std::string stage = s.at("stage").get<std::string>();
        for (const auto& ch : s.at("checks"))
            out += csv_field(stage) + ",check," + csv_field(ch.at("check").get<std::string>()) + "," +
                   csv_field(value_text(ch.at("value"))) + "," + (ch.at("pass").get<bool>() ? "1" : "0") + "\n";
        for (auto it = s.at("metrics").begin(); it != s.at("metrics").end(); ++it)
            out += csv_field(stage) + ",metric," + csv_field(it.key()) + "," + csv_field(value_text(it.value())) + ",\n";
    }
    return out;
}

std::string report_csv(const RunReport& r) { return report_csv_from_json(report_json(r)); }

}  // namespace lcc
