#include "lcc/design_kikuchi.hpp"

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <random>
#include <sstream>

namespace lcc {

namespace {

void require_small(int n) {
    if (n > 64) throw std::invalid_argument("Kikuchi graph code needs n <= 64");
}

Mask bit(int v) { return Mask{1} << v; }

bool parity(Mask m) { return std::popcount(m) & 1; }

// Visit every k-subset of the set bits of `pool`, in increasing colex order.
template <class F>
void for_each_subset(Mask pool, int k, F&& f) {
    std::vector<int> pos;
    for (int v = 0; v < 64; ++v)
        if (pool & bit(v)) pos.push_back(v);
    int m = static_cast<int>(pos.size());
    if (k < 0 || k > m) return;
    if (k == 0) {
        f(Mask{0});
        return;
    }
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        Mask s = 0;
        for (int i : idx) s |= bit(pos[i]);
        f(s);
        // next combination in colex order
        int i = 0;
        while (i < k && idx[i] + 1 == (i + 1 < k ? idx[i + 1] : m)) ++i;
        if (i == k) break;
        ++idx[i];
        for (int j = 0; j < i; ++j) idx[j] = j;
    }
}

Mask random_subset(std::mt19937_64& rng, int n, int k) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    Mask s = 0;
    for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> pick(i, n - 1);
        int j = pick(rng);
        std::swap(all[i], all[j]);
        s |= bit(all[i]);
    }
    return s;
}

double to_d(const Rational& q) { return q.get_d(); }

void check_distinct_halves(const std::vector<ChainHalves>& hs, int r) {
    for (const auto& h : hs)
        if (std::popcount(h.left) != r || std::popcount(h.right) != r || (h.left & h.right))
            throw std::invalid_argument("moment computation needs chains with 2r distinct v's");
}

// Window calibration: above the formula the allowance is c l^2/n + extra, below it c (l^2 + r l)/n.
double calibrate(double ratio, int n, int r, int ell, double extra) {
    double up = static_cast<double>(ell) * ell / n;
    double down = (static_cast<double>(ell) * ell + static_cast<double>(r) * ell) / n;
    if (ratio >= 1) return std::max(ratio - 1 - extra, 0.0) / up;
    return (1 - ratio) / down;
}

void fill_formulas(MomentReport& rep) {
    const auto& p = rep.params;
    rep.formulaR = second_moment_formula_right(p.n, p.r, p.ell, rep.dR);
    rep.formulaL = second_moment_formula_left(p.n, p.r, p.ell, rep.dL);
    rep.eta = Rational(p.n) / Rational(binom(p.ell, p.r));
    rep.ratioL = rep.formulaL == 0 ? 0 : rep.dL2 / to_d(rep.formulaL);
    rep.ratioR = rep.formulaR == 0 ? 0 : rep.dR2 / to_d(rep.formulaR);
    rep.cL = calibrate(rep.ratioL, p.n, p.r, p.ell, to_d(rep.eta));
    rep.cR = calibrate(rep.ratioR, p.n, p.r, p.ell, 0.0);

    Rational N(p.N());
    Integer per_chain = binom(p.n - 2 * p.r, p.ell - p.r);
    rep.dR_upper = Rational(per_chain * ipow(2 * (p.n - 1), p.r)) / N;
    Integer low = 2 * (p.n - 1) - 4 * p.r;
    rep.dR_lower_count = low > 0 ? Rational(per_chain * ipow(low, p.r)) / N : Rational(0);
    rep.first_moment_ok = rep.dR_lower_count <= rep.dR && rep.dR <= rep.dR_upper;
    rep.c_first = p.r == 0 ? 0 : (1 - to_d(Rational(rep.dR / rep.dR_upper))) * p.n / (static_cast<double>(p.r) * p.r);
}

void first_moments(MomentReport& rep, std::size_t chains) {
    const auto& p = rep.params;
    Rational N(p.N());
    Rational edges = Rational(Integer(static_cast<unsigned long>(chains)) * binom(p.n - 2 * p.r, p.ell - p.r));
    rep.chains = chains;
    rep.dR = edges / N;
    rep.dL = edges / (N * p.n);
}

}  // namespace

std::vector<ChainHalves> chain_halves(const std::vector<Chain>& chains) {
    std::vector<ChainHalves> out;
    out.reserve(chains.size());
    for (const auto& c : chains) {
        ChainHalves h;
        for (int x = 0; x < c.r(); ++x) {
            h.left |= bit(c.left(x));
            h.right |= bit(c.right(x));
        }
        h.tail = c.tail();
        out.push_back(h);
    }
    return out;
}

std::uint64_t edges_for_chain(const Chain& c, int n, int ell) {
    auto h = chain_halves({c}).front();
    int a = std::popcount(h.left), b = std::popcount(h.right);
    if (a != b || a > ell) return 0;
    return binom_u64(n - std::popcount(h.left | h.right), ell - a);
}

KikuchiGraph build_graph(const MatchingFamily& m, const KikuchiParams& p, const GraphBuildOptions& opt) {
    require_small(p.n);
    if (p.ell < p.r) throw std::invalid_argument("need ell >= r");
    KikuchiGraph g;
    g.params = p;
    ChainOptions copt;
    copt.distinct = opt.distinct;
    g.chains = enumerate_chains(m, p.head, p.r, copt);
    auto halves = chain_halves(g.chains);
    Mask all = p.n == 64 ? ~Mask{0} : (bit(p.n) - 1);
    for (std::uint32_t i = 0; i < halves.size(); ++i) {
        const auto& h = halves[i];
        int a = std::popcount(h.left), b = std::popcount(h.right);
        if (a != b) continue;
        for_each_subset(all & ~(h.left | h.right), p.ell - a, [&](Mask u) {
            if (g.edges.size() >= opt.max_edges) throw BudgetExceeded("Kikuchi edge budget exceeded", g.edges.size());
            g.edges.push_back({h.left | u, h.tail, h.right | u, i});
        });
    }
    return g;
}

std::size_t count_edge_decode_failures(const DesignLcc& lcc, const KikuchiGraph& g) {
    std::vector<Mask> basis;
    for (const auto& x : lcc.dual_basis) {
        Mask b = 0;
        for (int v = 0; v < lcc.design.n; ++v)
            if (x.get(v)) b |= bit(v);
        basis.push_back(b);
    }
    std::size_t fails = 0;
    int u = g.params.head;
    for (const auto& e : g.edges)
        for (Mask x : basis) {
            bool lhs = parity(x & e.S) ^ ((x >> e.w) & 1) ^ parity(x & e.T);
            if (lhs != ((x >> u) & 1)) ++fails;
        }
    return fails;
}

Rational second_moment_formula_right(int n, int r, int ell, const Rational& dR) {
    Rational three_delta(n - 1, n);
    Rational sum = 0;
    Rational denom(binom(ell, r));
    for (int t = 0; t <= r; ++t) {
        Rational term(binom(r, t) * binom(ell - r, r - t));
        term /= denom;
        Rational scale = 1;
        for (int i = 0; i < t; ++i) scale /= three_delta;
        sum += scale * term;
    }
    return dR * dR * sum;
}

Rational second_moment_formula_left(int n, int r, int ell, const Rational& dL) {
    Rational three_delta(n - 1, n);
    Rational sum = 0;
    Rational denom(binom(ell, r));
    for (int t = 0; t < r; ++t) {
        Rational term(binom(r, t) * binom(ell - r, r - t));
        term /= denom;
        Rational scale = 1;
        for (int i = 0; i <= t; ++i) scale /= three_delta;
        sum += scale * term;
    }
    Rational eta = Rational(n) / denom;
    return dL * dL * (sum + eta);
}

MomentReport exact_moments(const std::vector<Chain>& chains, const KikuchiParams& p) {
    require_small(p.n);
    auto hs = chain_halves(chains);
    check_distinct_halves(hs, p.r);
    MomentReport rep;
    rep.params = p;
    rep.mode = MomentMode::Exact;
    first_moments(rep, chains.size());

    const int w = 2 * p.r + 1;
    std::vector<std::uint64_t> right(w * w, 0), left(w * w, 0);
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const auto& a = hs[i];
        for (std::size_t j = 0; j < hs.size(); ++j) {
            const auto& b = hs[j];
            Mask A = a.right | b.right, B = a.left | b.left;
            if (!(A & B)) ++right[std::popcount(A) * w + std::popcount(B)];
        }
    }
    std::map<int, std::vector<std::size_t>> by_tail;
    for (std::size_t i = 0; i < hs.size(); ++i) by_tail[hs[i].tail].push_back(i);
    for (const auto& [tail, ids] : by_tail)
        for (auto i : ids)
            for (auto j : ids) {
                Mask A = hs[i].left | hs[j].left, B = hs[i].right | hs[j].right;
                if (!(A & B)) ++left[std::popcount(A) * w + std::popcount(B)];
            }
    Integer sum_r = 0, sum_l = 0;
    for (int a = 0; a < w; ++a)
        for (int b = 0; b < w; ++b) {
            if (right[a * w + b]) sum_r += Integer(static_cast<unsigned long>(right[a * w + b])) * binom(p.n - a - b, p.ell - a);
            if (left[a * w + b]) sum_l += Integer(static_cast<unsigned long>(left[a * w + b])) * binom(p.n - a - b, p.ell - a);
        }
    Rational N(p.N());
    rep.dR2_exact = Rational(sum_r) / N;
    rep.dL2_exact = Rational(sum_l) / (N * p.n);
    rep.dR2 = to_d(rep.dR2_exact);
    rep.dL2 = to_d(rep.dL2_exact);
    fill_formulas(rep);
    return rep;
}

MomentReport monte_carlo_moments(const std::vector<Chain>& chains, const KikuchiParams& p, std::uint64_t seed,
                                 std::uint64_t samples) {
    require_small(p.n);
    if (samples < 2) throw std::invalid_argument("need at least 2 samples");
    auto hs = chain_halves(chains);
    check_distinct_halves(hs, p.r);
    MomentReport rep;
    rep.params = p;
    rep.mode = MomentMode::MonteCarlo;
    rep.samples = samples;
    first_moments(rep, chains.size());

    std::vector<std::vector<ChainHalves>> by_tail(p.n);
    for (const auto& h : hs) by_tail[h.tail].push_back(h);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_w(0, p.n - 1);
    double sr = 0, srr = 0, sl = 0, sll = 0;
    for (std::uint64_t s = 0; s < samples; ++s) {
        Mask T = random_subset(rng, p.n, p.ell);
        double dr = 0;
        for (const auto& h : hs)
            if ((h.right & ~T) == 0 && (h.left & T) == 0) ++dr;
        Mask S = random_subset(rng, p.n, p.ell);
        int w = pick_w(rng);
        double dl = 0;
        for (const auto& h : by_tail[w])
            if ((h.left & ~S) == 0 && (h.right & S) == 0) ++dl;
        sr += dr * dr;
        srr += dr * dr * dr * dr;
        sl += dl * dl;
        sll += dl * dl * dl * dl;
    }
    double m = static_cast<double>(samples);
    rep.dR2 = sr / m;
    rep.dL2 = sl / m;
    rep.stderrR = std::sqrt(std::max(srr / m - rep.dR2 * rep.dR2, 0.0) * m / (m - 1) / m);
    rep.stderrL = std::sqrt(std::max(sll / m - rep.dL2 * rep.dL2, 0.0) * m / (m - 1) / m);
    fill_formulas(rep);
    return rep;
}

std::pair<Rational, Rational> brute_force_second_moments(const std::vector<Chain>& chains, const KikuchiParams& p) {
    require_small(p.n);
    auto hs = chain_halves(chains);
    Mask all = p.n == 64 ? ~Mask{0} : (bit(p.n) - 1);
    Integer sum_r = 0, sum_l = 0;
    for_each_subset(all, p.ell, [&](Mask T) {
        long dr = 0;
        for (const auto& h : hs)
            if ((h.right & ~T) == 0 && (h.left & T) == 0) ++dr;
        sum_r += dr * dr;
        for (int w = 0; w < p.n; ++w) {
            long dl = 0;
            for (const auto& h : hs)
                if (h.tail == w && (h.left & ~T) == 0 && (h.right & T) == 0) ++dl;
            sum_l += dl * dl;
        }
    });
    Rational N(p.N());
    return {Rational(sum_l) / (N * p.n), Rational(sum_r) / N};
}

std::string moments_csv_header() {
    return "# lcckit moments v1\nn,r,l,mode,dL,dL2,dR,dR2,formulaL,formulaR,ratioL,ratioR,stderr\n";
}

std::string moments_csv_row(const MomentReport& m) {
    std::ostringstream os;
    os.precision(12);
    os << m.params.n << ',' << m.params.r << ',' << m.params.ell << ','
       << (m.mode == MomentMode::Exact ? "exact" : "mc") << ',' << to_d(m.dL) << ',' << m.dL2 << ',' << to_d(m.dR)
       << ',' << m.dR2 << ',' << to_d(m.formulaL) << ',' << to_d(m.formulaR) << ',' << m.ratioL << ','
       << m.ratioR << ',' << std::max(m.stderrL, m.stderrR) << '\n';
    return os.str();
}

BinestSample binest_terms(long n, long r, long t, long ell) {
    BinestSample s{n, r, t, ell, 0, 0};
    Integer denom = binom(n - 2 * r, ell - r);
    denom *= denom;
    Integer num = binom(r, t) * factorial(t) * binom(n, ell);
    num *= (ell - (2 * r - t) >= 0 ? binom(n, ell - (2 * r - t)) : Integer(0));
    s.lhs = denom == 0 ? Rational(0) : Rational(num) / Rational(denom);
    s.lhs.canonicalize();
    s.rhs = Rational(ipow(n, t) * binom(ell - r, r - t)) / Rational(binom(ell, r));
    s.rhs.canonicalize();
    return s;
}

BinestSummary binest_sweep(std::size_t samples, std::uint64_t seed, double c_cap) {
    std::mt19937_64 rng(seed);
    BinestSummary out;
    while (out.samples < samples) {
        // ell^2 <= n: outside that regime the binomial approximation behind the bound is off by exp(ell^2/n)
        long n = std::uniform_int_distribution<long>(16, 4096)(rng);
        long cap = std::min(static_cast<long>(std::sqrt(static_cast<double>(n))), n / 4);
        long ell = std::uniform_int_distribution<long>(1, cap)(rng);
        long r = std::uniform_int_distribution<long>(1, ell)(rng);
        long t = std::uniform_int_distribution<long>(0, r)(rng);
        auto s = binest_terms(n, r, t, ell);
        ++out.samples;
        if (s.rhs == 0) {
            if (s.lhs != 0) ++out.violations;
            continue;
        }
        Rational excess = (s.lhs / s.rhs - 1) * n / (ell * ell);
        double c = excess.get_d();
        out.max_c = std::max(out.max_c, c);
        if (c > c_cap) ++out.violations;
    }
    return out;
}

double default_slack(int n, int r, int ell) {
    return 3.0 * (static_cast<double>(ell) * ell / n + static_cast<double>(n) / binom(ell, r).get_d());
}

std::vector<std::size_t> max_bipartite_matching(std::size_t n_left, std::size_t n_right,
                                                const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    Graph g(n_left + n_right);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> first_edge;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto key = edges[i];
        if (first_edge.emplace(key, i).second) boost::add_edge(key.first, n_left + key.second, g);
    }
    std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(n_left + n_right);
    boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
    std::vector<std::size_t> out;
    for (std::size_t l = 0; l < n_left; ++l) {
        auto m = mate[l];
        if (m == boost::graph_traits<Graph>::null_vertex()) continue;
        out.push_back(first_edge.at({l, m - n_left}));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::size_t> greedy_matching(std::size_t n_left, std::size_t n_right,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<char> lu(n_left, 0), ru(n_right, 0);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [l, r] = edges[i];
        if (lu[l] || ru[r]) continue;
        lu[l] = ru[r] = 1;
        out.push_back(i);
    }
    return out;
}

PruneMatchResult prune_and_match(const KikuchiGraph& g, double slack, std::size_t exact_matching_edge_budget) {
    const auto& p = g.params;
    PruneMatchResult res;
    auto& st = res.stats;
    st.edges_before = g.edges.size();

    std::vector<std::pair<Mask, int>> lkeys;
    std::vector<Mask> rkeys;
    for (const auto& e : g.edges) {
        lkeys.push_back({e.S, e.w});
        rkeys.push_back(e.T);
    }
    std::sort(lkeys.begin(), lkeys.end());
    lkeys.erase(std::unique(lkeys.begin(), lkeys.end()), lkeys.end());
    std::sort(rkeys.begin(), rkeys.end());
    rkeys.erase(std::unique(rkeys.begin(), rkeys.end()), rkeys.end());
    st.left_vertices = lkeys.size();
    st.right_vertices = rkeys.size();

    auto lid = [&](const KikuchiEdge& e) {
        return static_cast<std::size_t>(std::lower_bound(lkeys.begin(), lkeys.end(), std::make_pair(e.S, e.w)) - lkeys.begin());
    };
    auto rid = [&](const KikuchiEdge& e) {
        return static_cast<std::size_t>(std::lower_bound(rkeys.begin(), rkeys.end(), e.T) - rkeys.begin());
    };
    std::vector<std::size_t> ldeg(lkeys.size(), 0), rdeg(rkeys.size(), 0);
    for (const auto& e : g.edges) {
        ++ldeg[lid(e)];
        ++rdeg[rid(e)];
    }
    for (auto d : rdeg) st.max_right_deg_before = std::max(st.max_right_deg_before, d);

    Rational N(p.N());
    double dR = Rational(Rational(static_cast<unsigned long>(g.edges.size())) / N).get_d();
    double dL = dR / p.n;
    std::vector<char> lkeep(lkeys.size()), rkeep(rkeys.size());
    for (std::size_t i = 0; i < lkeys.size(); ++i) {
        lkeep[i] = std::fabs(ldeg[i] - dL) <= slack * dL;
        st.left_pruned += !lkeep[i];
    }
    for (std::size_t i = 0; i < rkeys.size(); ++i) {
        rkeep[i] = std::fabs(rdeg[i] - dR) <= slack * dR;
        st.right_pruned += !rkeep[i];
    }

    std::vector<std::size_t> copy_fill(rkeys.size(), 0);
    std::vector<std::pair<std::size_t, std::size_t>> bip;
    std::map<std::size_t, std::size_t> copy_deg;
    std::vector<int> copy_of;
    std::set<std::size_t> live_left;
    for (const auto& e : g.edges) {
        auto l = lid(e), r = rid(e);
        if (!lkeep[l] || !rkeep[r]) continue;
        res.pruned.push_back(e);
        int copy = static_cast<int>(copy_fill[r]++ % p.n);
        std::size_t rc = r * p.n + copy;
        bip.push_back({l, rc});
        copy_of.push_back(copy);
        ++copy_deg[rc];
        live_left.insert(l);
    }
    st.edges_after = res.pruned.size();
    st.edges_after_split = bip.size();
    for (const auto& [rc, d] : copy_deg) st.max_right_deg_after_split = std::max(st.max_right_deg_after_split, d);

    // compact right copy ids for the matcher
    std::map<std::size_t, std::size_t> compact;
    for (auto& [l, rc] : bip) {
        auto it = compact.emplace(rc, compact.size()).first;
        rc = it->second;
    }
    std::vector<std::size_t> chosen;
    if (bip.size() <= exact_matching_edge_budget) {
        chosen = max_bipartite_matching(lkeys.size(), compact.size(), bip);
    } else {
        chosen = greedy_matching(lkeys.size(), compact.size(), bip);
        st.greedy = true;
    }
    for (auto i : chosen) {
        const auto& e = res.pruned[i];
        res.matching.push_back({e.S, e.w, e.T, copy_of[i], e.label});
    }
    st.matching_size = res.matching.size();
    st.matching_ratio = live_left.empty() ? 0.0 : static_cast<double>(st.matching_size) / live_left.size();
    st.retained_fraction = st.edges_before ? static_cast<double>(st.edges_after) / st.edges_before : 1.0;
    return res;
}

std::uint64_t subset_rank(Mask s) {
    std::uint64_t rank = 0;
    int i = 0;
    while (s) {
        int p = std::countr_zero(s);
        s &= s - 1;
        ++i;
        rank += binom_u64(p, i);
    }
    return rank;
}

TwoLdcCheck check_2ldc(const TwoLdc& code) {
    TwoLdcCheck out;
    std::size_t min_size = code.matchings.empty() ? 0 : SIZE_MAX;
    for (std::size_t i = 0; i < code.matchings.size(); ++i) {
        std::vector<char> used(code.block_length, 0);
        for (const auto& [a, b] : code.matchings[i]) {
            if (a >= code.block_length || b >= code.block_length || a == b || used[a] || used[b]) {
                out.matchings_valid = false;
                continue;
            }
            used[a] = used[b] = 1;
            for (std::size_t c = 0; c < code.codewords.size(); ++c) {
                bool got = code.codewords[c].get(a) ^ code.codewords[c].get(b);
                if (got != code.messages[c].get(i)) {
                    if (!out.first_failure) out.first_failure = {i, {a, b}};
                    ++out.decode_failures;
                }
            }
        }
        min_size = std::min(min_size, code.matchings[i].size());
    }
    if (code.matchings.size() < code.k) min_size = 0;
    out.delta_prime = code.block_length ? static_cast<double>(min_size) / code.block_length : 0.0;
    out.lhs = 2.0 * out.delta_prime * static_cast<double>(code.k);
    out.rhs = code.block_length ? std::log2(static_cast<double>(code.block_length)) : 0.0;
    out.bound_holds = out.lhs <= out.rhs + 1e-12;
    return out;
}

TwoLdc hadamard_2ldc(std::size_t k) {
    TwoLdc code;
    code.k = k;
    code.block_length = std::size_t{1} << k;
    for (std::size_t i = 0; i < k; ++i) {
        BitVec cw(code.block_length), msg(k);
        for (std::size_t a = 0; a < code.block_length; ++a) cw.set(a, (a >> i) & 1);
        msg.set(i);
        code.codewords.push_back(cw);
        code.messages.push_back(msg);
    }
    code.matchings.resize(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t a = 0; a < code.block_length; ++a)
            if (!((a >> i) & 1)) code.matchings[i].push_back({a, a | (std::size_t{1} << i)});
    return code;
}

DesignLdcResult assemble_design_2ldc(const DesignLcc& lcc, const MatchingFamily& m, int r, int ell, double slack) {
    const int n = lcc.design.n;
    require_small(n);
    BitMatrix basis_m;
    basis_m.cols = n;
    basis_m.rows = lcc.dual_basis;
    RrefResult rr = rref(basis_m);

    DesignLdcResult out;
    auto& code = out.code;
    code.k = rr.rows.size();
    std::uint64_t N = binom_u64(n, ell);
    code.block_length = 2 * static_cast<std::size_t>(n) * N;
    std::size_t right_base = static_cast<std::size_t>(n) * N;

    Mask all = n == 64 ? ~Mask{0} : (bit(n) - 1);
    for (std::size_t j = 0; j < rr.rows.size(); ++j) {
        Mask x = 0;
        for (int v = 0; v < n; ++v)
            if (rr.rows[j].get(v)) x |= bit(v);
        BitVec cw(code.block_length), msg(code.k);
        msg.set(j);
        for_each_subset(all, ell, [&](Mask S) {
            std::size_t rank = subset_rank(S);
            bool ps = parity(x & S);
            for (int w = 0; w < n; ++w) {
                cw.set(rank * n + w, ps ^ ((x >> w) & 1));
                cw.set(right_base + rank * n + w, ps);
            }
        });
        code.codewords.push_back(std::move(cw));
        code.messages.push_back(std::move(msg));
    }

    out.systematic = rr.pivots;
    for (std::size_t j = 0; j < rr.pivots.size(); ++j) {
        KikuchiParams p{n, r, ell, static_cast<int>(rr.pivots[j])};
        auto g = build_graph(m, p);
        auto pm = prune_and_match(g, slack);
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& e : pm.matching)
            edges.push_back({subset_rank(e.S) * n + e.w, right_base + subset_rank(e.T) * n + e.copy});
        code.matchings.push_back(std::move(edges));
        out.per_head.push_back(pm.stats);
    }
    return out;
}

std::pair<int, int> schedule_params(double n, double gamma) {
    double l2 = std::log2(n);
    int r = static_cast<int>(std::ceil(0.5 * l2 + gamma * std::log2(l2)));
    if (r < 1) r = 1;
    return {r, 2 * r - 1};
}

}  // namespace lcc
