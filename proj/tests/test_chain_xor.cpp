#include "doctest.h"

#include "lcc/chain_xor.hpp"

#include <random>
#include <set>

using namespace lcc;

namespace {

HypergraphCollection empty_collection(int n) {
    HypergraphCollection col;
    col.n = n;
    col.H.assign(n, {});
    col.G.assign(n, {});
    return col;
}

// Two hyperedges out of 0 and one out of 3, plus a graph edge at 3.
HypergraphCollection two_link_toy() {
    auto col = empty_collection(6);
    col.H[0][{1, 2, 3}] = Rational(1, 2);
    col.H[0][{4, 5, 1}] = Rational(1, 3);
    col.H[3][{0, 4, 5}] = Rational(3, 4);
    col.G[3][{1, 2}] = Rational(2);
    return col;
}

SignVec random_signs(int n, std::mt19937_64& rng) {
    SignVec x(n);
    for (auto& v : x) v = (rng() & 1) ? 1 : -1;
    return x;
}

// Containment straight from the 1-based statement: Q_h must be v_{2(r-1-t+h)+1} or v_{2(r-1-t+h)+2}.
bool contains_naive(const std::vector<int>& Q, const std::vector<int>& C) {
    int r = (static_cast<int>(C.size()) - 1) / 3;
    int t = static_cast<int>(Q.size()) - 1;
    auto v = [&](int idx) {  // 1-based v index -> position in C
        int h = (idx - 1) / 2;
        return C[3 * h + 1 + (idx - 1) % 2];
    };
    if (Q[t] != kStar && Q[t] != C.back()) return false;
    for (int h = 1; h <= t; ++h) {
        int q = Q[h - 1];
        if (q == kStar) continue;
        if (q != v(2 * (r - 1 - t + h) + 1) && q != v(2 * (r - 1 - t + h) + 2)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("one-link chains are the collection itself") {
    std::mt19937_64 rng(5);
    auto col = random_collection({7, 3, 2, true}, rng);
    for (int u = 0; u < col.n; ++u) {
        auto hs = chain_hypergraph(col, u, 1, TailKind::Hyper);
        REQUIRE(hs.size() == col.H[u].size());
        std::size_t idx = 0;
        for (const auto& [e, w] : col.H[u]) {
            CHECK(hs[idx].seq == std::vector<int>{u, e[0], e[1], e[2]});
            CHECK(hs[idx].wt == w);
            ++idx;
        }
        auto gs = chain_hypergraph(col, u, 1, TailKind::Graph);
        REQUIRE(gs.size() == col.G[u].size());
        idx = 0;
        for (const auto& [e, w] : col.G[u]) {
            CHECK(gs[idx].seq == std::vector<int>{u, e[0], e[1]});
            CHECK(gs[idx].wt == w);
            ++idx;
        }
    }
}

TEST_CASE("two-link chain weights are link products") {
    auto col = two_link_toy();
    auto hs = chain_hypergraph(col, 0, 2, TailKind::Hyper);
    REQUIRE(hs.size() == 1);
    CHECK(hs[0].seq == std::vector<int>{0, 1, 2, 3, 0, 4, 5});
    CHECK(hs[0].wt == Rational(3, 8));
    auto gs = chain_hypergraph(col, 0, 2, TailKind::Graph);
    REQUIRE(gs.size() == 1);
    CHECK(gs[0].seq == std::vector<int>{0, 1, 2, 3, 1, 2});
    CHECK(gs[0].wt == Rational(1));
    // g_C: the four link vertices and the tail; 1 and 2 cancel in the graph-tailed one
    CHECK(odd_variables(hs[0].monomial()) == std::vector<int>{0, 1, 2, 4, 5});
    CHECK(odd_variables(gs[0].monomial()).empty());
    CHECK_THROWS_AS(chain_hypergraph(col, 0, 2, TailKind::Hyper, 0), BudgetExceeded);
}

TEST_CASE("weight conservation agrees with enumeration") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 3; ++rep) {
        auto col = random_collection({6, 3, 2, rep != 1}, rng);
        for (int u = 0; u < col.n; ++u)
            for (int t = 1; t <= 3; ++t) {
                auto c = weight_conservation(col, u, t);
                Rational h = 0, g = 0;
                for (const auto& ch : chain_hypergraph(col, u, t, TailKind::Hyper)) h += ch.wt;
                for (const auto& ch : chain_hypergraph(col, u, t, TailKind::Graph)) g += ch.wt;
                CHECK(c.total_H == h);
                CHECK(c.total_G == g);
                CHECK(c.pass());
            }
    }
}

TEST_CASE("weight conservation edge cases") {
    std::mt19937_64 rng(3);
    auto col = random_collection({6, 2, 1, true}, rng);
    for (auto& g : col.G) g.clear();
    for (int t = 1; t <= 5; ++t) {
        CHECK(weight_conservation(col, 2, t).total_H == 1);
        CHECK(weight_conservation(col, 2, t).total_G == 0);
    }
    auto e = empty_collection(4);
    CHECK(weight_conservation(e, 0, 3).total_H == 0);
}

TEST_CASE("compiled toy collections conserve weight up to t = 4") {
    for (const auto& tc : toy_zoo()) {
        if (tc.code.n > 16) continue;
        CAPTURE(tc.name);
        auto col = compile_collection(tc.tree, tc.code).col;
        for (int u = 0; u < col.n; ++u)
            for (int t = 1; t <= 4; ++t) CHECK(weight_conservation(col, u, t).pass());
    }
}

TEST_CASE("instance evaluation") {
    ChainXorInstance empty;
    empty.nvars = 3;
    CHECK(evaluate_instance(empty, {1, -1, 1}) == 0);
    ChainXorInstance one;
    one.nvars = 4;
    one.terms.push_back({0, {0, 1, 2, 3}, Rational(1), {1, 2, 3}});
    CHECK(evaluate_instance(one, {1, 1, 1, 1}) == 1);
    CHECK(evaluate_instance(one, {1, -1, 1, 1}) == -1);
    CHECK(evaluate_instance(one, {-1, -1, -1, 1}) == 1);
}

TEST_CASE("propagated values match enumerated instances") {
    std::mt19937_64 rng(21);
    auto col = random_collection({7, 3, 2, true}, rng);
    std::vector<int> heads{0, 2, 5};
    SignVec b{1, -1, -1};
    for (int r = 0; r <= 2; ++r) {
        auto psi = build_psi(col, heads, b, r);
        std::vector<ChainXorInstance> phis;
        for (int t = 1; t <= r + 1; ++t) phis.push_back(build_phi(col, heads, b, t));
        for (int rep = 0; rep < 20; ++rep) {
            auto x = random_signs(col.n, rng);
            CHECK(psi_value(col, heads, b, r, x) == evaluate_instance(psi, x));
            Rational sum = evaluate_instance(psi, x);
            for (int t = 1; t <= r + 1; ++t) {
                CHECK(phi_value(col, heads, b, t, x) == evaluate_instance(phis[t - 1], x));
                sum += evaluate_instance(phis[t - 1], x);
            }
            CHECK(chain_sum_value(col, heads, b, r, x) == sum);
        }
        CHECK(psi.abs_mass() <= psi.k());
        for (const auto& phi : phis) CHECK(phi.abs_mass() <= 4 * phi.k());
    }
}

TEST_CASE("completeness of the chain sum on padded codewords") {
    std::mt19937_64 rng(8);
    for (const auto& tc : toy_zoo()) {
        if (tc.code.n > 16 || tc.name == "constant-plus") continue;
        CAPTURE(tc.name);
        auto col = compile_collection(tc.tree, tc.code).col;
        auto padded = padded_code(tc.code);
        const int k = tc.code.k;
        for (int r : {0, 1, 3}) {
            for (int rep = 0; rep < 5; ++rep) {
                std::size_t w = rng() % padded.codewords.size();
                const auto& x = padded.codewords[w];
                const auto& b = padded.messages[w];
                Rational v = chain_sum_value(col, padded.systematic, b, r, x);
                if (tc.perfect) CHECK(v == k);
                else CHECK(v >= k * (1 - 2 * (r + 1) * tc.epsilon));
            }
        }
    }
}

TEST_CASE("exhaustive val matches a direct scan") {
    std::mt19937_64 rng(2);
    for (int rep = 0; rep < 10; ++rep) {
        int n = 3 + rep % 6;
        std::vector<std::pair<std::vector<int>, Rational>> poly;
        for (int j = 0; j < 6; ++j) {
            std::vector<int> vars;
            for (int v = 0; v < n; ++v)
                if (rng() % 3 == 0) vars.push_back(v);
            Rational c(static_cast<long>(rng() % 11) - 5, static_cast<long>(1 + rng() % 7));
            c.canonicalize();
            poly.emplace_back(vars, c);
        }
        Rational best;
        for (std::uint32_t x = 0; x < (1u << n); ++x) {
            Rational s = 0;
            for (const auto& [vars, c] : poly) {
                int sign = 1;
                for (int v : vars) sign *= ((x >> v) & 1) ? -1 : 1;
                s += sign * c;
            }
            if (x == 0 || s > best) best = s;
        }
        auto bv = val_brute(poly, n);
        CHECK(bv.val == best);
        Rational at = 0;
        for (const auto& [vars, c] : poly) {
            int sign = 1;
            for (int v : vars) sign *= bv.argmax[v];
            at += sign * c;
        }
        CHECK(at == best);
    }
    CHECK_THROWS(val_brute({}, 25));
}

TEST_CASE("pattern containment agrees with the 1-based statement") {
    std::mt19937_64 rng(77);
    int agree = 0;
    for (int rep = 0; rep < 10000; ++rep) {
        int r = 1 + rng() % 3;
        std::vector<int> C(3 * r + 1);
        for (auto& v : C) v = rng() % 5;
        int t = rng() % (r + 1);
        std::vector<int> Q(t + 1);
        for (auto& q : Q) q = (rng() % 4 == 0) ? kStar : static_cast<int>(rng() % 5);
        bool a = contains_pattern(Q, C), b = contains_naive(Q, C);
        agree += a == b;
    }
    CHECK(agree == 10000);
}

TEST_CASE("greedy partition extremes") {
    // every 1-chain shares the pattern (1, 3)
    auto col = empty_collection(5);
    col.H[0][{1, 2, 3}] = Rational(1, 2);
    col.H[4][{1, 0, 3}] = Rational(1, 2);
    col.H[2][{4, 1, 3}] = Rational(1, 2);
    // (0,3), (2,3) and (4,3) carry 1/2 each; only (1,3) reaches 1
    auto lp = greedy_level(col, 1, Rational(1));
    REQUIRE(lp.parts.size() == 1);
    CHECK(lp.parts[0].Q == std::vector<int>{1, 3});
    CHECK(lp.parts[0].members.size() == 3);
    CHECK(lp.residual.empty());
    auto none = greedy_level(col, 1, Rational(2));
    CHECK(none.parts.empty());
    CHECK(none.residual.size() == 3);
}

TEST_CASE("greedy partition is maximal, disjoint and mass bounded") {
    std::mt19937_64 rng(19);
    for (int rep = 0; rep < 4; ++rep) {
        auto col = random_collection({7, 3, 2, true}, rng);
        Rational delta = collection_delta(col);
        for (Rational d : {Rational(2), Rational(3)}) {
            auto p = greedy_partition(col, 2, d, delta);
            for (int t = 1; t <= 2; ++t) {
                const auto& lp = p.levels[t];
                CHECK(max_residual_pattern_mass(lp) < lp.threshold);
                std::set<std::size_t> seen;
                for (const auto& part : lp.parts) {
                    CHECK(part.wt >= lp.threshold);
                    Rational s = 0;
                    for (auto idx : part.members) {
                        CHECK(seen.insert(idx).second);
                        CHECK(contains_pattern(part.Q, lp.chains[idx].seq));
                        s += lp.chains[idx].wt;
                    }
                    CHECK(s == part.wt);
                }
                CHECK(seen.size() + lp.residual.size() == lp.chains.size());
                CHECK(p.level_mass(t) <= col.n);
            }
        }
    }
}

TEST_CASE("bipartite relaxation reproduces Psi under y = x_Q") {
    std::mt19937_64 rng(31);
    auto col = random_collection({7, 3, 2, true}, rng);
    Rational delta = collection_delta(col);
    std::vector<int> heads{0, 1, 3, 6};
    SignVec b{1, -1, 1, 1};
    for (int r = 1; r <= 2; ++r) {
        auto p = greedy_partition(col, r, Rational(2), delta);
        auto bp = bipartite_psi(col, p, heads, b);
        auto psi = build_psi(col, heads, b, r);
        CHECK(bp.term_count() == psi.terms.size());
        auto matchings = round_robin_directed_matchings(4);
        Rational W = group_weight(bp), diag = diagonal_bound(bp);
        for (int rep = 0; rep < 100; ++rep) {
            auto x = random_signs(col.n, rng);
            Rational v = evaluate_instance(psi, x);
            CHECK(psi_xy(bp, x, y_of_x(bp, x)) == v);
            Rational cross = 0;
            for (const auto& M : matchings) cross += cross_term(bp, M, x);
            // Cauchy-Schwarz with the exact group weights
            CHECK(v * v <= W * (diag + cross));
            for (const auto& g : bp.groups)
                for (int i = 0; i < 4; ++i) CHECK(abs(psi_iq(g, i, x)) <= psi_iq_mass(g, i));
        }
    }
}

TEST_CASE("trivial partition keys every chain by its tail") {
    std::mt19937_64 rng(4);
    auto col = random_collection({6, 2, 1, true}, rng);
    auto p = greedy_partition(col, 1, Rational(1), Rational(1, 1000));  // huge threshold
    CHECK(p.levels[1].parts.empty());
    auto bp = bipartite_psi(col, p, {0, 1}, {1, 1});
    for (const auto& g : bp.groups) {
        CHECK(g.level == 0);
        CHECK(g.wtQ == 1);
        for (const auto& terms : g.by_head)
            for (const auto& term : terms) CHECK(term.seq.back() == g.Q[0]);
    }
}

TEST_CASE("round robin covers each ordered pair once") {
    for (int k = 1; k <= 9; ++k) {
        auto ms = round_robin_directed_matchings(k);
        CHECK(ms.size() == static_cast<std::size_t>(k < 2 ? 0 : (k % 2 == 0 ? 2 * (k - 1) : 2 * k)));
        std::set<std::pair<int, int>> pairs;
        for (const auto& M : ms) {
            std::set<int> used;
            for (auto [i, j] : M) {
                CHECK(i != j);
                CHECK(used.insert(i).second);
                CHECK(used.insert(j).second);
                CHECK(pairs.insert({i, j}).second);
            }
        }
        CHECK(pairs.size() == static_cast<std::size_t>(k * (k - 1)));
    }
}

TEST_CASE("instance files round trip") {
    std::mt19937_64 rng(6);
    auto col = random_collection({6, 2, 2, true}, rng);
    auto inst = build_phi(col, {0, 4}, {1, -1}, 2);
    auto text = instance_to_jsonl(inst);
    auto back = instance_from_jsonl(text, col.n);
    CHECK(instance_to_jsonl(back) == text);
    CHECK(back.heads == inst.heads);
    CHECK(back.b == inst.b);
    auto x = random_signs(col.n, rng);
    CHECK(evaluate_instance(back, x) == evaluate_instance(inst, x));
}

TEST_CASE("r clamp") {
    CHECK(clamp_r(Rational(1, 10), Rational(1, 5), 1 << 20) == 3);
    CHECK(clamp_r(Rational(1, 10), Rational(1, 5), 4) == 2);
    CHECK(clamp_r(Rational(0), Rational(1, 5), 64) == 6);
    CHECK(clamp_r(Rational(1, 2), Rational(0), 64) == 0);
}
