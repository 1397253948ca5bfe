// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
#include "lcc/chain_xor.hpp"
#include "lcc/decoder_model.hpp"
#include "lcc/design_codes.hpp"
#include "lcc/design_kikuchi.hpp"
#include "lcc/harness.hpp"
#include "lcc/linear_chains.hpp"
#include "lcc/spectral_refuter.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace lcc;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int prec = 4) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

// Pinned tolerances.
constexpr double kMomentCCap = 32;     // criterion 6 window constant
constexpr double kMomentSE = 3;        // criterion 6 Monte Carlo band
constexpr std::uint64_t kMcSamples = 10000;
constexpr double kBinestCCap = 32;     // criterion 7
constexpr int kSoundnessInstances = 60;  // criterion 13, at least 50
constexpr int kKhintchineTrials = 200;   // criterion 15

struct DesignFixture {
    DesignLcc lcc;
    MatchingFamily m;
    explicit DesignFixture(int t) : lcc(build_rm_design(t)), m(derive_matchings(lcc)) {}
};

Outcome c1_design() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string d;
    for (int t = 1; t <= 3; ++t) {
        auto lcc = build_rm_design(t);
        int n = lcc.design.n;
        auto v = verify_design(lcc.design);
        bool blocks = Integer(lcc.design.blocks.size()) * 6 == binom(n, 2);
        ok = ok && n == (1 << (2 * t)) && v.pass && blocks;
        d += "t=" + std::to_string(t) + ": n=" + std::to_string(n) + " blocks=" + std::to_string(lcc.design.blocks.size()) +
             (v.pass ? " ok; " : " BAD; ");
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ok = ok && secs < 5;
    return {ok, d + "time " + fmt(secs, 3) + " s (< 5)"};
}

Outcome c2_dimension() {
    bool ok = true;
    std::string d;
    for (int t : {2, 3}) {
        auto rep = code_dimension_report(t);
        std::size_t k = 1 + t + t * (t - 1) / 2;
        bool reach = false;
        for (const auto& row : rep.rows) reach = reach || row.image_dim == k;
        ok = ok && rep.claimed_k == k && reach && rep.dim_v >= k;
        d += "t=" + std::to_string(t) + ": k=" + std::to_string(k) + " dimV=" + std::to_string(rep.dim_v) +
             " projection reaching k: " + (reach ? "yes" : "no") + "; ";
    }
    return {ok, d};
}

Outcome c3_matchings() {
    DesignFixture f(2);
    bool perfect = true;
    for (int u = 0; u < 16; ++u) perfect = perfect && matching_is_perfect(f.m, u) && f.m.at[u].size() == 5;
    std::size_t checks = 0;
    auto fails = count_matching_parity_failures(f.lcc, f.m, &checks);
    std::size_t expect = 16 * 5 * f.lcc.dual_basis.size();
    bool ok = perfect && fails == 0 && checks == expect;
    return {ok, "perfect=" + std::string(perfect ? "yes" : "no") + " checks=" + std::to_string(checks) + "/" +
                    std::to_string(expect) + " failures=" + std::to_string(fails)};
}

Outcome c4_chain_completeness() {
    DesignFixture f(2);
    PairIndex idx(f.lcc.design);
    auto links = ordered_links(f.m);
    std::mt19937_64 rng(404);
    std::size_t bad = 0, drawn = 0;
    for (int r : {1, 2, 3})
        for (int s = 0; s < 1000; ++s) {
            auto c = random_chain(links, static_cast<int>(rng() % 16), r, rng);
            if (!c) continue;
            ++drawn;
            bad += verify_chain_completeness(f.lcc, idx, *c) != ChainVerdict::Pass;
        }
    return {drawn == 3000 && bad == 0, std::to_string(drawn) + " chains, " + std::to_string(bad) + " failures"};
}

Outcome c5_edge_law() {
    auto t0 = std::chrono::steady_clock::now();
    DesignFixture f(2);
    auto g = build_graph(f.m, {16, 2, 3, 0});
    auto fails = count_edge_decode_failures(f.lcc, g);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = g.edges.size() == g.chains.size() * 12 && fails == 0 && secs < 60;
    return {ok, "|E|=" + std::to_string(g.edges.size()) + " = " + std::to_string(g.chains.size()) +
                    " chains x 12; decode failures " + std::to_string(fails) + "; " + fmt(secs, 3) + " s"};
}

Outcome c6_moments() {
    bool ok = true;
    std::string d;
    {
        DesignFixture f(2);
        auto chains = enumerate_chains(f.m, 0, 1);
        auto ex = exact_moments(chains, {16, 1, 2, 0});
        bool w = ex.cL <= kMomentCCap && ex.cR <= kMomentCCap;
        ok = ok && w;
        d += "(16,1,2) exact: cL=" + fmt(ex.cL) + " cR=" + fmt(ex.cR) + "; ";
    }
    {
        DesignFixture f(3);
        auto chains = enumerate_chains(f.m, 0, 2);
        KikuchiParams p{64, 2, 3, 0};
        auto ex = exact_moments(chains, p);
        auto mc = monte_carlo_moments(chains, p, 2024, kMcSamples);
        double zL = std::fabs(mc.dL2 - ex.dL2) / mc.stderrL;
        double zR = std::fabs(mc.dR2 - ex.dR2) / mc.stderrR;
        double fzR = std::fabs(mc.dR2 - ex.formulaR.get_d()) / mc.stderrR;
        bool w = ex.cL <= kMomentCCap && ex.cR <= kMomentCCap && zL <= kMomentSE && zR <= kMomentSE &&
                 mc.samples >= kMcSamples;
        ok = ok && w;
        d += "(64,2,3) MC " + std::to_string(mc.samples) + " samples: z vs exact L=" + fmt(zL, 3) + " R=" + fmt(zR, 3) +
             " (z vs formula R=" + fmt(fzR, 3) + "), cL=" + fmt(ex.cL) + " cR=" + fmt(ex.cR);
    }
    return {ok, d};
}

Outcome c7_binest() {
    auto s = binest_sweep(1000, 77, kBinestCCap);
    bool ok = s.samples == 1000 && s.violations == 0 && s.max_c <= kBinestCCap;
    return {ok, std::to_string(s.samples) + " samples, " + std::to_string(s.violations) + " violations, max c " +
                    fmt(s.max_c)};
}

Outcome c8_two_ldc() {
    DesignFixture f(2);
    auto res = assemble_design_2ldc(f.lcc, f.m, 2, 3, default_slack(16, 2, 3));
    auto c = check_2ldc(res.code);
    return {c.pass(), "2 delta' k = " + fmt(c.lhs) + " <= log2 N = " + fmt(c.rhs) + "; delta'=" + fmt(c.delta_prime) +
                          "; decode failures " + std::to_string(c.decode_failures)};
}

Outcome c9_decoders() {
    bool ok = true;
    Rational worst_c = 0;
    std::mt19937_64 rng(9);
    std::size_t identities = 0;
    for (const auto& tc : toy_zoo()) {
        for (int u = 0; u < tc.code.n; ++u) {
            auto ws = compile_and_weights(tc.tree, u);
            ok = ok && wt_total(ws) == 4;
            auto test_x = tc.code.codewords;
            for (int s = 0; s < 20; ++s) {
                SignVec x(tc.code.n);
                for (auto& v : x) v = rng() & 1 ? 1 : -1;
                test_x.push_back(x);
            }
            for (const auto& x : test_x) {
                ok = ok && wt_and_sum(ws, x) == 1 && wt_poly_sum(ws, x) == simulate_decoder(tc.tree, u, x);
                identities += 2;
            }
        }
        auto rep = compile_collection(tc.tree, tc.code);
        ok = ok && rep.normalization_ok && rep.identity_failures == 0 && rep.c <= 16;
        worst_c = std::max(worst_c, rep.c);
    }
    return {ok, std::to_string(toy_zoo().size()) + " decoders, " + std::to_string(identities) +
                    " exact identities, max smoothness c = " + rat_str(worst_c) + " (<= 16)"};
}

Outcome c10_conservation() {
    bool ok = true;
    Rational h = 0, g = 0;
    std::size_t checked = 0;
    for (const auto& tc : toy_zoo()) {
        auto col = compile_collection(tc.tree, tc.code).col;
        for (int t = 1; t <= 4; ++t)
            for (int u = 0; u < col.n; ++u) {
                auto c = weight_conservation(col, u, t);
                ok = ok && c.pass();
                h = std::max(h, c.total_H);
                g = std::max(g, c.total_G);
                ++checked;
            }
    }
    return {ok, std::to_string(checked) + " (u, t) pairs, max hyper mass " + rat_str(h) + " (<= 1), max graph mass " +
                    rat_str(g) + " (<= 4)"};
}

Outcome c11_completeness() {
    bool ok = true;
    std::string d;
    std::mt19937_64 rng(11);
    for (const auto& tc : toy_zoo()) {
        bool noisy = tc.name == "hadamard-noisy";
        if (!(tc.perfect || noisy)) continue;
        if (tc.code.n > 16) continue;
        auto col = compile_collection(tc.tree, tc.code).col;
        auto padded = padded_code(tc.code);
        Rational worst = -1;
        for (int r : {0, 1, 2})
            for (int s = 0; s < 20; ++s) {
                std::size_t w = rng() % padded.codewords.size();
                Rational v = chain_sum_value(col, padded.systematic, padded.messages[w], r, padded.codewords[w]);
                bool good = tc.perfect ? v == tc.code.k : v >= tc.code.k * (1 - 2 * (r + 1) * tc.epsilon);
                ok = ok && good;
                if (worst < 0 || v < worst) worst = v;
            }
        d += tc.name + " min " + rat_str(worst) + (tc.perfect ? " (= k)" : " (>= k(1-2(r+1)eps))") + "; ";
    }
    return {ok, d};
}

// Shared instance family for criteria 12-14: random smooth collections.
struct ToyInstance {
    HypergraphCollection col;
    std::vector<int> heads;
    SignVec b;
};

ToyInstance random_instance(std::mt19937_64& rng, int n, int k) {
    ToyInstance ti{random_collection({n, 3, 2, (rng() & 3) != 0}, rng), {}, {}};
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < k; ++i) {
        ti.heads.push_back(perm[i]);
        ti.b.push_back(rng() & 1 ? 1 : -1);
    }
    return ti;
}

Outcome c12_quadratic() {
    std::mt19937_64 rng(12);
    std::size_t instances = 0, evaluations = 0, failures = 0;
    for (int rep = 0; rep < 12; ++rep) {
        int n = 6 + rep % 4;  // n' <= 9 keeps the exhaustive sweep quick
        auto ti = random_instance(rng, n, 3);
        for (int ell = 1; ell <= 2; ++ell) {
            for (int t = 1; t <= 2; ++t) {
                auto phi = build_phi(ti.col, ti.heads, ti.b, t);
                auto A = build_graph_tail_matrix(phi, ell);
                auto B = prune_rows(A, 64, collection_delta(ti.col) * n, PruneMode::GraphTail, 1).B;
                ++instances;
                for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
                    SignVec x(n);
                    for (int i = 0; i < n; ++i) x[i] = (bits >> i) & 1 ? -1 : 1;
                    Rational v = evaluate_instance(phi, x);
                    failures += quadratic_form(A, x) != v;
                    failures += 2 * quadratic_form(B, x) != v;
                    evaluations += 2;
                }
            }
            for (int r = 0; r <= 1; ++r) {
                Rational delta = collection_delta(ti.col);
                auto part = greedy_partition(ti.col, r, Rational(n), delta);
                auto bp = bipartite_psi(ti.col, part, ti.heads, ti.b);
                for (const auto& M : round_robin_directed_matchings(3)) {
                    auto A = build_hyper_tail_matrix(bp, M, ell);
                    ++instances;
                    for (std::uint64_t bits = 0; bits < (1ull << n); ++bits) {
                        SignVec x(n);
                        for (int i = 0; i < n; ++i) x[i] = (bits >> i) & 1 ? -1 : 1;
                        failures += quadratic_form(A, x) != cross_term(bp, M, x);
                        ++evaluations;
                    }
                }
            }
        }
    }
    return {failures == 0, std::to_string(instances) + " matrices, " + std::to_string(evaluations) +
                               " exhaustive evaluations, " + std::to_string(failures) + " mismatches"};
}

Outcome c13_soundness() {
    std::mt19937_64 rng(13);
    int instances = 0, checked = 0, violations = 0;
    double tightest = 0;
    for (int rep = 0; rep < kSoundnessInstances; ++rep) {
        int n = 6 + static_cast<int>(rng() % 7);  // 6..12
        int k = 2 + static_cast<int>(rng() % 5);  // 2..6
        auto ti = random_instance(rng, n, k);
        RefuteParams p;
        p.ell = 1 + static_cast<int>(rng() % 2);
        p.r = 1;
        p.d = n;
        ++instances;
        int t = 1 + static_cast<int>(rng() % 2);
        std::vector<Certificate> certs{certify_graph_tail(ti.col, ti.heads, ti.b, t, p)};
        RefuteParams ph = p;
        ph.ell = 1;
        certs.push_back(certify_hyper_tail(ti.col, ti.heads, ti.b, ph));
        for (const auto& c : certs) {
            if (!c.val_brute) continue;
            ++checked;
            violations += !c.sound();
            if (c.val_bound > 0) tightest = std::max(tightest, c.val_brute->get_d() / c.val_bound);
        }
    }
    bool ok = instances >= 50 && violations == 0 && checked == 2 * instances;
    return {ok, std::to_string(instances) + " instances, " + std::to_string(checked) + " certificates vs brute force, " +
                    std::to_string(violations) + " violations, tightest val/bound " + fmt(tightest, 3)};
}

Outcome c14_retention() {
    // declared toy set: graph tail n in {8,12,16}, l in {2,3}, t in {1,2}; hyper tail n in {8,12}, l = 2, r = 1
    std::mt19937_64 rng(14);
    std::size_t labels = 0, short_labels = 0;
    double cg = 0, ch = 0, first_ratio = 0;
    for (int n : {8, 12, 16}) {
        auto ti = random_instance(rng, n, 4);
        Rational dn = collection_delta(ti.col) * n;
        for (int ell : {2, 3})
            for (int t : {1, 2}) {
                auto A = build_graph_tail_matrix(build_phi(ti.col, ti.heads, ti.b, t), ell);
                auto st = prune_rows(A, 64, dn, PruneMode::GraphTail, 1).stats;
                labels += st.labels;
                short_labels += st.labels_short;
                cg = std::max(cg, st.calibrated_c);
                if (st.first_target > 0) first_ratio = std::max(first_ratio, Rational(st.first_moment / st.first_target).get_d());
            }
        if (n > 12) continue;
        auto part = greedy_partition(ti.col, 1, Rational(n), collection_delta(ti.col));
        auto bp = bipartite_psi(ti.col, part, ti.heads, ti.b);
        for (const auto& M : round_robin_directed_matchings(4)) {
            auto st = prune_rows(build_hyper_tail_matrix(bp, M, 2), 64, dn, PruneMode::HyperTail, 1).stats;
            labels += st.labels;
            short_labels += st.labels_short;
            ch = std::max(ch, st.calibrated_c);
            if (st.first_target > 0) first_ratio = std::max(first_ratio, Rational(st.first_moment / st.first_target).get_d());
        }
    }
    bool ok = short_labels == 0 && first_ratio <= 1;
    return {ok, std::to_string(labels) + " labels, " + std::to_string(short_labels) +
                    " below ceil(D/2); first moment / target max " + fmt(first_ratio, 3) +
                    "; conditional-mean window constants (calibrated): graph tail c=" + fmt(cg, 3) +
                    ", hyper tail c=" + fmt(ch, 3)};
}

Outcome c15_khintchine() {
    bool ok = true;
    std::string d;
    for (const auto& [name, X] : khintchine_fixtures(15)) {
        auto res = khintchine_check(name, X, kKhintchineTrials, 15);
        ok = ok && res.pass() && res.trials == kKhintchineTrials;
        d += name + " " + fmt(res.ratio, 3) + "; ";
    }
    return {ok, "E||sum b_i X_i|| / bound: " + d};
}

Outcome c16_determinism() {
    const char* configs[] = {
        R"({"pipeline": "design", "t": 2, "r": 2, "ell": 3, "seed": 7, "chain_samples": 300})",
        R"({"pipeline": "design", "t": 1, "r": 2, "ell": 2, "seed": 7})",
        R"({"pipeline": "design", "t": 2, "r": 1, "ell": 2, "seed": 5, "mode": "mc", "mc_samples": 2000})",
        R"({"pipeline": "nonlinear", "zoo": "design-t1", "r": 1, "ell": 1, "d": 4, "seed": 3, "messages": 8})",
        R"({"pipeline": "nonlinear", "zoo": "hadamard-noisy", "r": 1, "ell": 1, "seed": 3, "messages": 8, "hyper_tail": false})",
    };
    bool ok = true;
    int runs = 0, passing = 0;
    for (const char* text : configs) {
        auto cfg = load_config(nlohmann::json::parse(text));
        auto a = run_pipeline(cfg), b = run_pipeline(cfg);
        ok = ok && report_json(a) == report_json(b) && report_csv(a) == report_csv(b);
        passing += a.pass();
        ++runs;
    }
    return {ok, std::to_string(runs) + " pipelines re-run, JSON and CSV byte-identical; " + std::to_string(passing) +
                    " of them pass all stages"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> all = {
        {1, "design construction t=1..3", c1_design},
        {2, "code dimension vs k", c2_dimension},
        {3, "t=2 matchings and parity checks", c3_matchings},
        {4, "random chain completeness", c4_chain_completeness},
        {5, "Kikuchi edge law (16,2,3)", c5_edge_law},
        {6, "second-moment windows", c6_moments},
        {7, "binomial estimate sweep", c7_binest},
        {8, "two-query code at t=2", c8_two_ldc},
        {9, "decoder compilation identities", c9_decoders},
        {10, "weight conservation t<=4", c10_conservation},
        {11, "chain-sum completeness", c11_completeness},
        {12, "quadratic-form identities", c12_quadratic},
        {13, "certificate soundness gate", c13_soundness},
        {14, "row-pruning retention", c14_retention},
        {15, "matrix Khintchine fixtures", c15_khintchine},
        {16, "pipeline determinism", c16_determinism},
    };
    int failed = 0;
    for (const auto& c : all) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::printf("criterion %2d %s: %s | %s [%.2fs]\n", c.id, o.pass ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}
