// lcckit: command line front end for the design, decoder and refutation tools.
#include "lcc/harness.hpp"

#include "lcc/design_codes.hpp"
#include "lcc/design_kikuchi.hpp"
#include "lcc/linear_chains.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace lcc;
using ojson = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ConfigError("cannot write " + out_path);
    out << text;
}

template <class F>
auto parse_input(const std::string& what, F&& f) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError("bad " + what + ": " + e.what());
    }
}

// "3,5,9" (1-based) -> {2,4,8}
std::vector<int> parse_vertex_list(const std::string& s, int n) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        int v = 0;
        try {
            v = std::stoi(item);
        } catch (const std::exception&) {
            throw ConfigError("bad vertex '" + item + "'");
        }
        if (v < 1 || v > n) throw ConfigError("vertex " + item + " out of range");
        out.push_back(v - 1);
    }
    return out;
}

// "+-+" -> {1,-1,1}
SignVec parse_signs(const std::string& s, std::size_t len) {
    if (s.size() != len) throw ConfigError("sign string must have length " + std::to_string(len));
    SignVec out;
    for (char ch : s) {
        if (ch != '+' && ch != '-') throw ConfigError("sign strings use + and -");
        out.push_back(ch == '+' ? 1 : -1);
    }
    return out;
}

Rational rat_arg(const std::string& s, const char* name) {
    try {
        return parse_rat(s);
    } catch (const std::exception&) {
        throw ConfigError(std::string("--") + name + " expects p/q");
    }
}

// ---- design sources ----

struct DesignSource {
    std::string file;
    int t = 2;
};

void add_design_source(CLI::App* cmd, DesignSource& s) {
    cmd->add_option("--design", s.file, "design JSON (from design build)");
    cmd->add_option("--t", s.t, "build the design for F4^t instead")->check(CLI::Range(1, 4));
}

DesignLcc load_design(const DesignSource& s) {
    if (s.file.empty()) return build_rm_design(s.t);
    return parse_input("design file", [&] { return design_from_json(slurp(s.file)); });
}

int cmd_design_build(int t, const std::string& out) {
    auto lcc = build_rm_design(t);
    auto v = verify_design(lcc.design);
    ojson j;
    j["t"] = t;
    j["n"] = lcc.design.n;
    j["blocks"] = lcc.design.blocks.size();
    j["design_ok"] = v.pass;
    j["k"] = lcc.k;
    if (!out.empty()) emit(design_to_json(lcc), out);
    else std::cout << design_to_json(lcc) << "\n";
    std::cerr << j.dump() << "\n";
    return v.pass ? kExitPass : kExitCheckFailed;
}

int cmd_design_verify(const std::string& file) {
    auto lcc = parse_input("design file", [&] { return design_from_json(slurp(file)); });
    auto v = verify_design(lcc.design);
    auto m = derive_matchings(lcc);
    bool perfect = true;
    for (int u = 0; u < lcc.design.n; ++u) perfect = perfect && matching_is_perfect(m, u);
    std::size_t checks = 0;
    auto fails = count_matching_parity_failures(lcc, m, &checks);
    ojson j;
    j["n"] = lcc.design.n;
    j["blocks"] = lcc.design.blocks.size();
    j["uncovered_pairs"] = v.uncovered_pairs;
    j["multiply_covered_pairs"] = v.multiply_covered_pairs;
    j["matchings_perfect"] = perfect;
    j["parity_checks"] = checks;
    j["parity_failures"] = fails;
    bool ok = v.pass && perfect && fails == 0;
    j["pass"] = ok;
    std::cout << j.dump() << "\n";
    return ok ? kExitPass : kExitCheckFailed;
}

int cmd_design_matchings(const std::string& file) {
    auto lcc = parse_input("design file", [&] { return design_from_json(slurp(file)); });
    auto m = derive_matchings(lcc);
    for (int u = 0; u < m.n; ++u) {
        ojson j;
        j["u"] = u + 1;
        ojson triples = ojson::array();
        for (const auto& tr : m.at[u]) triples.push_back({tr[0] + 1, tr[1] + 1, tr[2] + 1});
        j["triples"] = triples;
        std::cout << j.dump() << "\n";
    }
    return kExitPass;
}

// ---- chains ----

int cmd_chains_enumerate(const DesignSource& ds, int u, int r, bool count_only) {
    auto lcc = load_design(ds);
    auto m = derive_matchings(lcc);
    if (u < 1 || u > lcc.design.n) throw ConfigError("--u out of range");
    if (count_only) {
        auto count = count_chains(m, u - 1, r);
        auto st = chain_stats(lcc.design.n, r, count);
        ojson j;
        j["u"] = u;
        j["r"] = r;
        j["chains"] = count;
        j["lower"] = st.lower_bound.get_str();
        j["upper"] = st.upper_bound.get_str();
        j["within"] = st.within();
        std::cout << j.dump() << "\n";
        return st.within() ? kExitPass : kExitCheckFailed;
    }
    PairIndex idx(lcc.design);
    std::size_t bad = 0;
    for_each_chain(m, u - 1, r, [&](const Chain& c) {
        std::cout << c.to_line() << "\n";
        bad += verify_chain_completeness(lcc, idx, c) != ChainVerdict::Pass;
    });
    if (bad) std::cerr << bad << " chains fail the completeness identity\n";
    return bad == 0 ? kExitPass : kExitCheckFailed;
}

int cmd_chains_smoothness(const DesignSource& ds, int u, int r, const std::string& pattern, const std::string& side,
                          int tail) {
    auto lcc = load_design(ds);
    auto m = derive_matchings(lcc);
    if (u < 1 || u > lcc.design.n) throw ConfigError("--u out of range");
    auto pat = parse_vertex_list(pattern, lcc.design.n);
    std::optional<int> tl;
    if (tail > 0) {
        if (tail > lcc.design.n) throw ConfigError("--tail out of range");
        tl = tail - 1;
    }
    auto count = count_chains_with_fixed_pattern(m, u - 1, r, pat, side == "left" ? Side::Left : Side::Right, tl);
    auto bound = pattern_count_bound(lcc.design.n, r, static_cast<int>(pat.size()), tl.has_value());
    ojson j;
    j["u"] = u;
    j["r"] = r;
    j["pattern_size"] = pat.size();
    j["side"] = side;
    j["count"] = count;
    j["bound"] = bound.get_str();
    j["within"] = Integer(count) <= bound;
    std::cout << j.dump() << "\n";
    return Integer(count) <= bound ? kExitPass : kExitCheckFailed;
}

// ---- kikuchi / ldc2 ----

int cmd_kikuchi_moments(const DesignSource& ds, int r, int ell, int head, bool mc, std::uint64_t samples,
                        std::uint64_t seed) {
    auto lcc = load_design(ds);
    auto m = derive_matchings(lcc);
    if (head < 1 || head > lcc.design.n) throw ConfigError("--u out of range");
    auto chains = enumerate_chains(m, head - 1, r);
    KikuchiParams p{lcc.design.n, r, ell, head - 1};
    auto rep = mc ? monte_carlo_moments(chains, p, seed, samples) : exact_moments(chains, p);
    auto line = [](std::string s) { return s.empty() || s.back() == '\n' ? s : s + "\n"; };
    std::cout << line(moments_csv_header()) << line(moments_csv_row(rep));
    return kExitPass;
}

int cmd_kikuchi_match(const DesignSource& ds, int r, int ell, int head, double slack) {
    auto lcc = load_design(ds);
    auto m = derive_matchings(lcc);
    if (head < 1 || head > lcc.design.n) throw ConfigError("--u out of range");
    const int n = lcc.design.n;
    if (slack <= 0) slack = default_slack(n, r, ell);
    auto g = build_graph(m, {n, r, ell, head - 1});
    auto res = prune_and_match(g, slack);
    const auto& st = res.stats;
    ojson j;
    j["n"] = n;
    j["r"] = r;
    j["l"] = ell;
    j["u"] = head;
    j["chains"] = g.chains.size();
    j["edges"] = g.edges.size();
    j["slack"] = slack;
    j["left_pruned"] = st.left_pruned;
    j["right_pruned"] = st.right_pruned;
    j["edges_after"] = st.edges_after;
    j["retained_fraction"] = st.retained_fraction;
    j["matching_size"] = st.matching_size;
    j["matching_ratio"] = st.matching_ratio;
    j["greedy"] = st.greedy;
    j["decode_failures"] = count_edge_decode_failures(lcc, g);
    std::cout << j.dump() << "\n";
    return j["decode_failures"] == 0 ? kExitPass : kExitCheckFailed;
}

std::string two_ldc_to_json(const TwoLdc& c) {
    ojson j;
    j["block_length"] = c.block_length;
    j["k"] = c.k;
    ojson cw = ojson::array(), msg = ojson::array(), mt = ojson::array();
    for (const auto& v : c.codewords) cw.push_back(v.to_hex());
    for (const auto& v : c.messages) msg.push_back(v.to_hex());
    for (const auto& pairs : c.matchings) {
        ojson row = ojson::array();
        for (auto [a, b] : pairs) row.push_back({a, b});
        mt.push_back(row);
    }
    j["codewords"] = cw;
    j["messages"] = msg;
    j["matchings"] = mt;
    return j.dump() + "\n";
}

TwoLdc two_ldc_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    TwoLdc c;
    c.block_length = j.at("block_length").get<std::size_t>();
    c.k = j.at("k").get<std::size_t>();
    for (const auto& h : j.at("codewords")) c.codewords.push_back(BitVec::from_hex(h.get<std::string>(), c.block_length));
    for (const auto& h : j.at("messages")) c.messages.push_back(BitVec::from_hex(h.get<std::string>(), c.k));
    for (const auto& row : j.at("matchings")) {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        for (const auto& p : row) pairs.emplace_back(p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>());
        c.matchings.push_back(std::move(pairs));
    }
    if (c.codewords.size() != c.messages.size()) throw std::invalid_argument("codeword and message counts differ");
    return c;
}

ojson two_ldc_summary(const TwoLdc& code, const TwoLdcCheck& c) {
    ojson j;
    j["block_length"] = code.block_length;
    j["k"] = code.k;
    j["matchings_valid"] = c.matchings_valid;
    j["delta_prime"] = c.delta_prime;
    j["two_delta_k"] = c.lhs;
    j["log2_block_length"] = c.rhs;
    j["decode_failures"] = c.decode_failures;
    j["pass"] = c.pass();
    return j;
}

int cmd_ldc2_assemble(const DesignSource& ds, int r, int ell, double slack, const std::string& out) {
    auto lcc = load_design(ds);
    auto m = derive_matchings(lcc);
    if (slack <= 0) slack = default_slack(lcc.design.n, r, ell);
    auto res = assemble_design_2ldc(lcc, m, r, ell, slack);
    auto c = check_2ldc(res.code);
    if (!out.empty()) emit(two_ldc_to_json(res.code), out);
    std::cout << two_ldc_summary(res.code, c).dump() << "\n";
    return c.pass() ? kExitPass : kExitCheckFailed;
}

int cmd_ldc2_verify(const std::string& file) {
    auto code = parse_input("2-LDC file", [&] { return two_ldc_from_json(slurp(file)); });
    auto c = check_2ldc(code);
    std::cout << two_ldc_summary(code, c).dump() << "\n";
    return c.pass() ? kExitPass : kExitCheckFailed;
}

// ---- decoders and chain XOR ----

struct SourceOpts {
    std::string zoo, tree, code;
};

void add_source(CLI::App* cmd, SourceOpts& s) {
    cmd->add_option("--zoo", s.zoo, "toy decoder name");
    cmd->add_option("--tree", s.tree, "decoder tree JSON");
    cmd->add_option("--code", s.code, "code JSON");
}

ToyCase load_source(const SourceOpts& s) {
    if (!s.zoo.empty()) {
        for (auto& tc : toy_zoo())
            if (tc.name == s.zoo) return tc;
        std::string names;
        for (auto& tc : toy_zoo()) names += " " + tc.name;
        throw ConfigError("unknown zoo decoder '" + s.zoo + "'; known:" + names);
    }
    if (s.tree.empty() || s.code.empty()) throw ConfigError("give --zoo or both --tree and --code");
    ToyCase tc;
    tc.tree = parse_input("decoder tree", [&] {
        auto t = tree_from_json(slurp(s.tree));
        validate_tree(t);
        return t;
    });
    tc.code = parse_input("code file", [&] { return code_from_json(slurp(s.code)); });
    tc.name = s.tree;
    tc.epsilon = 0;
    tc.perfect = false;
    return tc;
}

int cmd_decoder_compile(const SourceOpts& s, const std::string& delta, const std::string& out) {
    auto tc = load_source(s);
    auto rep = compile_collection(tc.tree, tc.code);
    bool smooth_ok = true;
    ojson j;
    j["name"] = tc.name;
    j["n"] = tc.code.n;
    j["n_padded"] = rep.col.n;
    j["delta"] = rat_str(rep.delta);
    if (!delta.empty()) {
        Rational want = rat_arg(delta, "delta");
        smooth_ok = rep.delta >= want;
        j["declared_delta"] = rat_str(want);
        j["declared_delta_ok"] = smooth_ok;
    }
    j["max_incident"] = rat_str(rep.max_incident);
    j["c"] = rat_str(rep.c);
    j["normalization_ok"] = rep.normalization_ok;
    j["identity_failures"] = rep.identity_failures;
    if (!out.empty()) emit(collection_to_jsonl(rep.col), out);
    std::cout << j.dump() << "\n";
    return rep.normalization_ok && rep.identity_failures == 0 && smooth_ok ? kExitPass : kExitCheckFailed;
}

struct XorTarget {
    HypergraphCollection col;
    std::vector<int> heads;
    SignVec b;
};

struct XorOpts {
    std::string collection, heads, message;
    int k = 0;
    std::size_t message_index = 0;
    int random_n = 0;
};

void add_xor_target(CLI::App* cmd, XorOpts& x, SourceOpts& s) {
    cmd->add_option("--collection", x.collection, "collection JSONL (from decoder compile)");
    cmd->add_option("--k", x.k, "use heads 1..k of the collection");
    cmd->add_option("--heads", x.heads, "comma-separated 1-based heads");
    cmd->add_option("--b", x.message, "message signs, e.g. +-+");
    add_source(cmd, s);
    cmd->add_option("--message", x.message_index, "with --zoo/--tree: index into the code's messages");
    cmd->add_option("--random", x.random_n, "random smooth collection on this many vertices");
}

XorTarget load_target(const XorOpts& x, const SourceOpts& s, std::uint64_t seed) {
    XorTarget t;
    if (x.random_n > 0) {
        std::mt19937_64 rng(seed);
        t.col = random_collection({x.random_n, 3, 2, true}, rng);
        int k = x.k > 0 ? std::min(x.k, x.random_n) : std::min(4, x.random_n);
        for (int i = 0; i < k; ++i) {
            t.heads.push_back(i * x.random_n / k);
            t.b.push_back(rng() & 1 ? 1 : -1);
        }
        return t;
    }
    if (!x.collection.empty()) {
        t.col = parse_input("collection", [&] { return collection_from_jsonl(slurp(x.collection)); });
        if (!x.heads.empty()) t.heads = parse_vertex_list(x.heads, t.col.n);
        else {
            if (x.k < 1 || x.k > t.col.n) throw ConfigError("give --heads or --k in 1..n");
            for (int i = 0; i < x.k; ++i) t.heads.push_back(i);
        }
        t.b = x.message.empty() ? SignVec(t.heads.size(), 1) : parse_signs(x.message, t.heads.size());
        return t;
    }
    auto tc = load_source(s);
    auto comp = compile_collection(tc.tree, tc.code);
    auto padded = padded_code(tc.code);
    if (x.message_index >= padded.messages.size()) throw ConfigError("--message out of range");
    t.col = comp.col;
    t.heads = padded.systematic;
    t.b = padded.messages[x.message_index];
    return t;
}

int cmd_xor_build(const XorTarget& t, int r, const std::string& out) {
    std::string text = instance_to_jsonl(build_psi(t.col, t.heads, t.b, r));
    for (int len = 1; len <= r + 1; ++len) text += instance_to_jsonl(build_phi(t.col, t.heads, t.b, len));
    emit(text, out);
    return kExitPass;
}

int cmd_xor_eval(const std::string& file, int nvars, const std::string& bits) {
    auto inst = parse_input("instance", [&] { return instance_from_jsonl(slurp(file), nvars); });
    auto x = parse_signs(bits, nvars);
    Rational v = evaluate_instance(inst, x);
    ojson j;
    j["value"] = rat_str(v);
    j["value_float"] = v.get_d();
    j["terms"] = inst.terms.size();
    std::cout << j.dump() << "\n";
    return kExitPass;
}

int cmd_xor_partition(const XorTarget& t, int r, const std::string& d, const std::string& delta) {
    Rational dd = rat_arg(d, "d");
    Rational del = delta.empty() ? collection_delta(t.col) : rat_arg(delta, "delta");
    auto p = greedy_partition(t.col, r, dd, del);
    for (int level = 1; level < static_cast<int>(p.levels.size()); ++level) {
        const auto& lp = p.levels[level];
        ojson j;
        j["level"] = level;
        j["threshold"] = rat_str(lp.threshold);
        j["chains"] = lp.chains.size();
        j["residual"] = lp.residual.size();
        ojson parts = ojson::array();
        for (const auto& part : lp.parts) {
            ojson q = ojson::array();
            for (int v : part.Q) q.push_back(v == kStar ? ojson("*") : ojson(v + 1));
            parts.push_back({{"Q", q}, {"members", part.members.size()}, {"wt", rat_str(part.wt)}});
        }
        j["parts"] = parts;
        j["mass"] = rat_str(p.level_mass(level));
        std::cout << j.dump() << "\n";
    }
    return kExitPass;
}

int cmd_val_brute(const std::string& file, int nvars) {
    if (nvars > kMaxBruteVars) throw ConfigError("brute force is limited to 24 variables");
    auto inst = parse_input("instance", [&] { return instance_from_jsonl(slurp(file), nvars); });
    auto v = val_brute(inst);
    ojson j;
    j["val"] = rat_str(v.val);
    j["val_float"] = v.val.get_d();
    std::string x;
    for (int s : v.argmax) x += s == 1 ? '+' : '-';
    j["argmax"] = x;
    std::cout << j.dump() << "\n";
    return kExitPass;
}

// ---- refutation ----

int cmd_refute(const std::string& which, const XorTarget& target, int t, int r, int ell, const std::string& gamma,
               const std::string& d, std::uint64_t seed) {
    RefuteParams p;
    p.ell = ell;
    p.r = r;
    p.gamma = rat_arg(gamma, "gamma");
    p.d = rat_arg(d, "d");
    p.seed = seed;
    p.norm.seed = seed;
    auto cert = which == "graph-tail" ? certify_graph_tail(target.col, target.heads, target.b, t, p)
                                      : certify_hyper_tail(target.col, target.heads, target.b, p);
    std::cout << certificate_json(cert) << "\n";
    return cert.sound() ? kExitPass : kExitCheckFailed;
}

int cmd_khintchine(int trials, std::uint64_t seed) {
    bool ok = true;
    for (const auto& [name, X] : khintchine_fixtures(seed)) {
        auto res = khintchine_check(name, X, trials, seed);
        ojson j;
        j["family"] = res.family;
        j["d1"] = res.d1;
        j["d2"] = res.d2;
        j["m"] = res.m;
        j["sigma2"] = res.sigma2;
        j["mean_norm"] = res.mean_norm;
        j["bound"] = res.bound;
        j["ratio"] = res.ratio;
        j["pass"] = res.pass();
        ok = ok && res.pass();
        std::cout << j.dump() << "\n";
    }
    return ok ? kExitPass : kExitCheckFailed;
}

// ---- orchestration ----

int cmd_pipeline(const std::string& config, const std::string& out, const std::string& csv, bool timing) {
    auto cfg = load_config_file(config);
    auto rep = run_pipeline(cfg);
    emit(report_json(rep, timing), out);
    if (!csv.empty()) emit(report_csv(rep), csv);
    if (!rep.aborted_at.empty())
        for (const auto& s : rep.stages)
            if (s.name == rep.aborted_at) std::cerr << "stage " << s.name << " failed: " << s.diagnostics << "\n";
    return rep.exit_code();
}

int cmd_report(const std::string& input, const std::string& format) {
    auto text = slurp(input);
    try {
        if (format == "csv") std::cout << report_csv_from_json(text);
        else std::cout << nlohmann::ordered_json::parse(text).dump(2) << "\n";
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("not a report: ") + e.what());
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lcckit: design LCCs, chain XOR instances and Kikuchi refutation"};
    app.require_subcommand(1);

    int t = 2, r = 2, ell = 3, u = 1, trials = 200, nvars = 0, tail = 0;
    std::uint64_t seed = 1, mc_samples = 10000;
    bool mc = false, timing = false, count_only = false;
    double slack = 0;
    std::string out, csv, file, gamma = "64", d = "2", delta, format = "json", pattern, side = "right", bits;
    DesignSource ds;
    SourceOpts src;
    XorOpts xo;

    // design
    auto* design = app.add_subcommand("design", "line designs over F4^t");
    design->require_subcommand(1);
    auto* d_build = design->add_subcommand("build", "build the design and its dual code");
    d_build->add_option("--t", t)->check(CLI::Range(1, 4));
    d_build->add_option("--out", out, "design JSON path (default stdout)");
    auto* d_verify = design->add_subcommand("verify", "check pair coverage, matchings and parity checks");
    d_verify->add_option("file", file)->required();
    auto* d_match = design->add_subcommand("matchings", "print H_u for every u");
    d_match->add_option("file", file)->required();

    // chains
    auto* chains = app.add_subcommand("chains", "chains through the matching family");
    chains->require_subcommand(1);
    auto* c_enum = chains->add_subcommand("enumerate", "list chains from u (lexicographic)");
    add_design_source(c_enum, ds);
    c_enum->add_option("--u", u, "1-based head");
    c_enum->add_option("--r", r)->check(CLI::Range(1, 16));
    c_enum->add_flag("--count-only", count_only);
    auto* c_smooth = chains->add_subcommand("smoothness", "count chains through a fixed pattern");
    add_design_source(c_smooth, ds);
    c_smooth->add_option("--u", u);
    c_smooth->add_option("--r", r)->check(CLI::Range(1, 16));
    c_smooth->add_option("--pattern", pattern, "comma-separated 1-based vertices")->required();
    c_smooth->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));
    c_smooth->add_option("--tail", tail, "fix the tail vertex (1-based)");

    // kikuchi
    auto* kikuchi = app.add_subcommand("kikuchi", "Kikuchi graph of the design");
    kikuchi->require_subcommand(1);
    auto* k_mom = kikuchi->add_subcommand("moments", "degree moments (CSV)");
    add_design_source(k_mom, ds);
    k_mom->add_option("--r", r)->check(CLI::Range(1, 16));
    k_mom->add_option("--ell", ell)->check(CLI::Range(1, 64));
    k_mom->add_option("--u", u);
    k_mom->add_flag("--mc", mc, "Monte Carlo instead of exact");
    k_mom->add_option("--samples", mc_samples);
    k_mom->add_option("--seed", seed);
    auto* k_match = kikuchi->add_subcommand("match", "prune heavy vertices and match");
    add_design_source(k_match, ds);
    k_match->add_option("--r", r)->check(CLI::Range(1, 16));
    k_match->add_option("--ell", ell)->check(CLI::Range(1, 64));
    k_match->add_option("--u", u);
    k_match->add_option("--slack", slack);

    // ldc2
    auto* ldc2 = app.add_subcommand("ldc2", "two-query code from the Kikuchi matchings");
    ldc2->require_subcommand(1);
    auto* l_asm = ldc2->add_subcommand("assemble");
    add_design_source(l_asm, ds);
    l_asm->add_option("--r", r)->check(CLI::Range(1, 16));
    l_asm->add_option("--ell", ell)->check(CLI::Range(1, 64));
    l_asm->add_option("--slack", slack, "pruning slack (default from n, r, ell)");
    l_asm->add_option("--out", out, "write the code JSON here");
    auto* l_ver = ldc2->add_subcommand("verify");
    l_ver->add_option("file", file)->required();

    // decoder
    auto* decoder = app.add_subcommand("decoder", "3-query decoders");
    decoder->require_subcommand(1);
    auto* dec_c = decoder->add_subcommand("compile", "compile into a hypergraph collection");
    add_source(dec_c, src);
    dec_c->add_option("--delta", delta, "declared smoothness to check, p/q");
    dec_c->add_option("--out", out, "collection JSONL path");

    // xor
    auto* xorcmd = app.add_subcommand("xor", "chain XOR instances");
    xorcmd->require_subcommand(1);
    auto* x_build = xorcmd->add_subcommand("build", "emit Psi and Phi^(1..r+1) as JSON lines");
    add_xor_target(x_build, xo, src);
    x_build->add_option("--r", r)->check(CLI::Range(0, 16));
    x_build->add_option("--seed", seed);
    x_build->add_option("--out", out);
    auto* x_eval = xorcmd->add_subcommand("eval", "evaluate an instance file at x");
    x_eval->add_option("--instance", file)->required();
    x_eval->add_option("--nvars", nvars)->required()->check(CLI::Range(1, 1 << 20));
    x_eval->add_option("--x", bits, "signs, e.g. ++-+")->required();
    auto* x_part = xorcmd->add_subcommand("partition", "greedy heavy-pattern partition");
    add_xor_target(x_part, xo, src);
    x_part->add_option("--r", r)->check(CLI::Range(1, 16));
    x_part->add_option("--d", d);
    x_part->add_option("--delta", delta, "default: the collection's own delta");
    x_part->add_option("--seed", seed);
    auto* x_val = xorcmd->add_subcommand("val-brute", "exhaustive val (n' <= 24)");
    x_val->add_option("--instance", file)->required();
    x_val->add_option("--nvars", nvars)->required()->check(CLI::Range(1, 64));

    // refute
    auto* refute = app.add_subcommand("refute", "spectral refutation certificates");
    refute->require_subcommand(1);
    std::vector<CLI::App*> refute_subs;
    for (const char* which : {"graph-tail", "hyper-tail"}) {
        auto* sub = refute->add_subcommand(which);
        add_xor_target(sub, xo, src);
        sub->add_option("--t", t, "graph-tail chain length")->check(CLI::Range(1, 16));
        sub->add_option("--r", r)->check(CLI::Range(0, 16));
        sub->add_option("--ell", ell)->check(CLI::Range(1, 64));
        sub->add_option("--gamma", gamma);
        sub->add_option("--d", d);
        sub->add_option("--seed", seed);
        refute_subs.push_back(sub);
    }
    auto* khin = refute->add_subcommand("khintchine", "matrix Khintchine check on fixture families");
    khin->add_option("--trials", trials)->check(CLI::Range(1, 100000));
    khin->add_option("--seed", seed);

    // oracle
    auto* oracle = app.add_subcommand("oracle", "brute-force reference values");
    oracle->require_subcommand(1);
    auto* val = oracle->add_subcommand("val", "exhaustive val of an instance file");
    val->add_option("--instance", file)->required();
    val->add_option("--nvars", nvars)->required()->check(CLI::Range(1, 64));

    // pipeline / report
    auto* pipeline = app.add_subcommand("pipeline", "run a configured end-to-end pipeline");
    pipeline->add_option("--config", file)->required();
    pipeline->add_option("--out", out, "report JSON path (default stdout)");
    pipeline->add_option("--csv", csv, "also write the CSV report");
    pipeline->add_flag("--timing", timing, "include stage timings");
    auto* report = app.add_subcommand("report", "reformat a saved report");
    report->add_option("--input", file)->required();
    report->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        if (*d_build) return cmd_design_build(t, out);
        if (*d_verify) return cmd_design_verify(file);
        if (*d_match) return cmd_design_matchings(file);
        if (*c_enum) return cmd_chains_enumerate(ds, u, r, count_only);
        if (*c_smooth) return cmd_chains_smoothness(ds, u, r, pattern, side, tail);
        if (*k_mom) return cmd_kikuchi_moments(ds, r, ell, u, mc, mc_samples, seed);
        if (*k_match) return cmd_kikuchi_match(ds, r, ell, u, slack);
        if (*l_asm) return cmd_ldc2_assemble(ds, r, ell, slack, out);
        if (*l_ver) return cmd_ldc2_verify(file);
        if (*dec_c) return cmd_decoder_compile(src, delta, out);
        if (*x_build) return cmd_xor_build(load_target(xo, src, seed), r, out);
        if (*x_eval) return cmd_xor_eval(file, nvars, bits);
        if (*x_part) return cmd_xor_partition(load_target(xo, src, seed), r, d, delta);
        if (*x_val || *val) return cmd_val_brute(file, nvars);
        if (*khin) return cmd_khintchine(trials, seed);
        for (auto* sub : refute_subs)
            if (*sub) return cmd_refute(sub->get_name(), load_target(xo, src, seed), t, r, ell, gamma, d, seed);
        if (*pipeline) return cmd_pipeline(file, out, csv, timing);
        if (*report) return cmd_report(file, format);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << " (raise LCC_BUDGET_SCALE)\n";
        return kExitBudget;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitConfig;
}
