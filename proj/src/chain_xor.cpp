#include "lcc/chain_xor.hpp"

#include "json.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lcc {

std::vector<int> WeightedChain::monomial() const {
    std::vector<int> m;
    const int t = links();
    for (int h = 0; h < t; ++h) {
        m.push_back(left(h));
        m.push_back(right(h));
    }
    if (kind == TailKind::Hyper) m.push_back(tail());
    return m;
}

std::vector<int> odd_variables(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j < v.size() && v[j] == v[i]) ++j;
        if ((j - i) % 2 == 1) out.push_back(v[i]);
        i = j;
    }
    return out;
}

void for_each_weighted_chain(const HypergraphCollection& col, int u, int t, TailKind kind,
                             const std::function<void(const WeightedChain&)>& visit, std::uint64_t budget) {
    if (t < 1) throw std::invalid_argument("chains need at least one link");
    budget = scaled_budget(budget);
    std::uint64_t produced = 0;
    WeightedChain c;
    c.kind = kind;
    c.seq.push_back(u);
    const int hyper_links = kind == TailKind::Hyper ? t : t - 1;
    std::function<void(int, int, const Rational&)> rec = [&](int depth, int at, const Rational& w) {
        if (depth == hyper_links) {
            if (kind == TailKind::Hyper) {
                if (++produced > budget) throw BudgetExceeded("chain hypergraph budget exceeded", produced - 1);
                c.wt = w;
                visit(c);
                return;
            }
            for (const auto& [e, we] : col.G[at]) {
                if (we == 0) continue;
                if (++produced > budget) throw BudgetExceeded("chain hypergraph budget exceeded", produced - 1);
                c.seq.push_back(e[0]);
                c.seq.push_back(e[1]);
                c.wt = w * we;
                visit(c);
                c.seq.resize(c.seq.size() - 2);
            }
            return;
        }
        for (const auto& [e, we] : col.H[at]) {
            if (we == 0) continue;
            c.seq.push_back(e[0]);
            c.seq.push_back(e[1]);
            c.seq.push_back(e[2]);
            rec(depth + 1, e[2], w * we);
            c.seq.resize(c.seq.size() - 3);
        }
    };
    rec(0, u, Rational(1));
}

std::vector<WeightedChain> chain_hypergraph(const HypergraphCollection& col, int u, int t, TailKind kind,
                                            std::uint64_t budget) {
    std::vector<WeightedChain> out;
    for_each_weighted_chain(col, u, t, kind, [&](const WeightedChain& c) { out.push_back(c); }, budget);
    return out;
}

namespace {

// mass[v] after one more H link
std::vector<Rational> push_mass(const HypergraphCollection& col, const std::vector<Rational>& mass) {
    std::vector<Rational> next(col.n);
    for (int v = 0; v < col.n; ++v) {
        if (mass[v] == 0) continue;
        for (const auto& [e, w] : col.H[v]) next[e[2]] += mass[v] * w;
    }
    return next;
}

// as push_mass, carrying the signed monomial of the two link variables
std::vector<Rational> push_value(const HypergraphCollection& col, const std::vector<Rational>& val, const SignVec& x) {
    std::vector<Rational> next(col.n);
    for (int v = 0; v < col.n; ++v) {
        if (val[v] == 0) continue;
        for (const auto& [e, w] : col.H[v]) next[e[2]] += val[v] * w * (x[e[0]] * x[e[1]]);
    }
    return next;
}

Rational phi_local(const HypergraphCollection& col, int v, const SignVec& x) {
    Rational s = 0;
    for (const auto& [e, w] : col.G[v]) s += w * (x[e[0]] * x[e[1]]);
    return s;
}

void check_heads(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b) {
    if (heads.size() != b.size()) throw std::invalid_argument("one sign per head");
    for (int h : heads)
        if (h < 0 || h >= col.n) throw std::invalid_argument("head out of range");
}

}  // namespace

Conservation weight_conservation(const HypergraphCollection& col, int u, int t) {
    if (t < 1) throw std::invalid_argument("t >= 1");
    std::vector<Rational> mass(col.n);
    mass[u] = 1;
    Conservation c{u, t, 0, 0};
    for (int h = 0; h < t - 1; ++h) mass = push_mass(col, mass);
    for (int v = 0; v < col.n; ++v)
        if (mass[v] != 0) c.total_G += mass[v] * col.total_G(v);
    mass = push_mass(col, mass);
    for (const auto& m : mass) c.total_H += m;
    return c;
}

Rational ChainXorInstance::abs_mass() const {
    Rational s = 0;
    for (const auto& term : terms) s += abs(term.coef);
    return s;
}

ChainXorInstance build_phi(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b, int t,
                           std::uint64_t budget) {
    check_heads(col, heads, b);
    ChainXorInstance inst;
    inst.kind = InstanceKind::Phi;
    inst.t = t;
    inst.nvars = col.n;
    inst.heads = heads;
    inst.b = b;
    for (int i = 0; i < inst.k(); ++i)
        for_each_weighted_chain(col, heads[i], t, TailKind::Graph, [&](const WeightedChain& c) {
            inst.terms.push_back({i, c.seq, c.wt * b[i], odd_variables(c.monomial())});
        }, budget);
    return inst;
}

ChainXorInstance build_psi(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b, int r,
                           std::uint64_t budget) {
    check_heads(col, heads, b);
    ChainXorInstance inst;
    inst.kind = InstanceKind::Psi;
    inst.t = r + 1;
    inst.r = r;
    inst.nvars = col.n;
    inst.heads = heads;
    inst.b = b;
    for (int i = 0; i < inst.k(); ++i)
        for_each_weighted_chain(col, heads[i], r + 1, TailKind::Hyper, [&](const WeightedChain& c) {
            inst.terms.push_back({i, c.seq, c.wt * b[i], odd_variables(c.monomial())});
        }, budget);
    return inst;
}

Rational evaluate_instance(const ChainXorInstance& inst, const SignVec& x) {
    if (static_cast<int>(x.size()) != inst.nvars) throw std::invalid_argument("assignment has the wrong length");
    Rational s = 0;
    for (const auto& term : inst.terms) {
        int sign = 1;
        for (int v : term.vars) sign *= x[v];
        s += sign * term.coef;
    }
    return s;
}

BruteVal val_brute(const std::vector<std::pair<std::vector<int>, Rational>>& poly, int nvars) {
    if (nvars > kMaxBruteVars) throw std::invalid_argument("exhaustive val is limited to 24 variables");
    const std::size_t size = std::size_t{1} << nvars;
    // common denominator, then integer coefficients per monomial mask
    Integer lcm = 1;
    for (const auto& [vars, c] : poly) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
    std::map<std::uint32_t, Integer> by_mask;
    Integer total_abs = 0;
    for (const auto& [vars, c] : poly) {
        std::uint32_t m = 0;
        for (int v : vars) {
            if (v < 0 || v >= nvars) throw std::invalid_argument("variable out of range");
            m ^= 1u << v;
        }
        Integer scaled = c.get_num() * (lcm / c.get_den());
        by_mask[m] += scaled;
    }
    for (const auto& [m, c] : by_mask) total_abs += abs(c);
    BruteVal out;
    if (total_abs < (Integer(1) << 62)) {
        std::vector<std::int64_t> f(size, 0);
        for (const auto& [m, c] : by_mask) f[m] = c.get_si();
        // f_hat(x) = sum_m f(m) (-1)^{popcount(m & x)}
        for (std::size_t len = 1; len < size; len <<= 1)
            for (std::size_t i = 0; i < size; i += len << 1)
                for (std::size_t j = i; j < i + len; ++j) {
                    std::int64_t a = f[j], c = f[j + len];
                    f[j] = a + c;
                    f[j + len] = a - c;
                }
        std::size_t best = 0;
        for (std::size_t x = 1; x < size; ++x)
            if (f[x] > f[best]) best = x;
        out.val = Rational(Integer(static_cast<long>(f[best])), lcm);
        out.val.canonicalize();
        out.argmax.resize(nvars);
        for (int v = 0; v < nvars; ++v) out.argmax[v] = ((best >> v) & 1) ? -1 : 1;
        return out;
    }
    // huge coefficients: plain exact scan
    bool first = true;
    for (std::size_t x = 0; x < size; ++x) {
        Integer s = 0;
        for (const auto& [m, c] : by_mask) s += (std::popcount(m & static_cast<std::uint32_t>(x)) & 1) ? -c : c;
        Rational q(s, lcm);
        q.canonicalize();
        if (first || q > out.val) {
            first = false;
            out.val = q;
            out.argmax.assign(nvars, 1);
            for (int v = 0; v < nvars; ++v) out.argmax[v] = ((x >> v) & 1) ? -1 : 1;
        }
    }
    return out;
}

BruteVal val_brute(const ChainXorInstance& inst) {
    std::vector<std::pair<std::vector<int>, Rational>> poly;
    poly.reserve(inst.terms.size());
    for (const auto& t : inst.terms) poly.emplace_back(t.vars, t.coef);
    return val_brute(poly, inst.nvars);
}

Rational psi_value(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b, int r,
                   const SignVec& x) {
    check_heads(col, heads, b);
    Rational s = 0;
    for (std::size_t i = 0; i < heads.size(); ++i) {
        std::vector<Rational> val(col.n);
        val[heads[i]] = 1;
        for (int h = 0; h <= r; ++h) val = push_value(col, val, x);
        Rational p = 0;
        for (int v = 0; v < col.n; ++v) p += val[v] * x[v];
        s += b[i] * p;
    }
    return s;
}

Rational phi_value(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b, int t,
                   const SignVec& x) {
    check_heads(col, heads, b);
    Rational s = 0;
    for (std::size_t i = 0; i < heads.size(); ++i) {
        std::vector<Rational> val(col.n);
        val[heads[i]] = 1;
        for (int h = 0; h < t - 1; ++h) val = push_value(col, val, x);
        Rational p = 0;
        for (int v = 0; v < col.n; ++v)
            if (val[v] != 0) p += val[v] * phi_local(col, v, x);
        s += b[i] * p;
    }
    return s;
}

Rational chain_sum_value(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b, int r,
                         const SignVec& x) {
    Rational s = psi_value(col, heads, b, r, x);
    for (int t = 1; t <= r + 1; ++t) s += phi_value(col, heads, b, t, x);
    return s;
}

int clamp_r(const Rational& eps, const Rational& eta, int n) {
    if (n < 1) throw std::invalid_argument("n >= 1");
    int log2n = 0;
    while ((2L << log2n) <= n) ++log2n;
    if (eps < 0 || eta < 0 || eta >= 1) throw std::invalid_argument("need eps >= 0 and 0 <= eta < 1");
    if (eps == 0) return log2n;
    Rational q = (1 - eta) / (2 * eps);
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    long r0 = fl.get_si() - 1;
    return static_cast<int>(std::max(0L, std::min<long>(r0, log2n)));
}

// ---- partition ----

bool contains_pattern(const std::vector<int>& Q, const std::vector<int>& seq) {
    if (Q.empty() || seq.size() % 3 != 1) return false;
    const int r = static_cast<int>(seq.size() - 1) / 3;
    const int t = static_cast<int>(Q.size()) - 1;
    if (t > r) return false;
    if (Q[t] != kStar && Q[t] != seq.back()) return false;
    for (int h = 0; h < t; ++h) {
        if (Q[h] == kStar) continue;
        int link = r - t + h;
        if (Q[h] != seq[3 * link + 1] && Q[h] != seq[3 * link + 2]) return false;
    }
    return true;
}

Rational Partition::level_mass(int t) const {
    Rational s = 0;
    for (const auto& part : levels.at(t).parts) s += part.wt;
    return s;
}

Rational partition_threshold(int n, const Rational& d, const Rational& delta, int t) {
    Rational dn = delta * n;
    Rational th = n;
    for (int i = 0; i < t; ++i) th *= d;
    for (int i = 0; i < t + 1; ++i) th /= dn;
    return th;
}

namespace {

// Every complete Q a t-chain contains: one endpoint per link, then the tail.
std::vector<std::vector<int>> patterns_of(const WeightedChain& c) {
    const int t = c.links();
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << t); ++mask) {
        std::vector<int> Q(t + 1);
        for (int h = 0; h < t; ++h) Q[h] = ((mask >> h) & 1) ? c.right(h) : c.left(h);
        Q[t] = c.tail();
        out.push_back(std::move(Q));
    }
    return out;
}

}  // namespace

LevelPartition greedy_level(const HypergraphCollection& col, int t, const Rational& threshold, std::uint64_t budget) {
    LevelPartition lp;
    lp.level = t;
    lp.threshold = threshold;
    std::uint64_t seen = 0;
    for (int u = 0; u < col.n; ++u)
        for_each_weighted_chain(col, u, t, TailKind::Hyper, [&](const WeightedChain& c) {
            if (++seen > scaled_budget(budget)) throw BudgetExceeded("partition chain budget exceeded", seen - 1);
            lp.chains.push_back(c);
        }, budget);

    std::map<std::vector<int>, std::vector<std::size_t>> by_q;
    for (std::size_t idx = 0; idx < lp.chains.size(); ++idx)
        for (auto& Q : patterns_of(lp.chains[idx])) by_q[std::move(Q)].push_back(idx);

    // Taking the smallest heavy Q each round is the same as one ascending pass,
    // because removals only lower the mass of the remaining Q's.
    std::vector<char> taken(lp.chains.size(), 0);
    for (const auto& [Q, idxs] : by_q) {
        Rational mass = 0;
        for (auto idx : idxs)
            if (!taken[idx]) mass += lp.chains[idx].wt;
        if (mass == 0 || mass < threshold) continue;
        PartitionPart part{Q, {}, mass};
        for (auto idx : idxs)
            if (!taken[idx]) {
                taken[idx] = 1;
                part.members.push_back(idx);
                lp.part_of_chain[lp.chains[idx].seq] = lp.parts.size();
            }
        lp.parts.push_back(std::move(part));
    }
    for (std::size_t idx = 0; idx < lp.chains.size(); ++idx)
        if (!taken[idx]) lp.residual.push_back(idx);
    return lp;
}

Partition greedy_partition(const HypergraphCollection& col, int r, const Rational& d, const Rational& delta,
                           std::uint64_t budget) {
    if (r < 0) throw std::invalid_argument("r >= 0");
    if (d <= 0 || delta <= 0) throw std::invalid_argument("d and delta must be positive");
    Partition p;
    p.n = col.n;
    p.r = r;
    p.d = d;
    p.delta = delta;
    p.levels.resize(r + 1);
    for (int t = 1; t <= r; ++t) p.levels[t] = greedy_level(col, t, partition_threshold(col.n, d, delta, t), budget);
    return p;
}

Rational max_residual_pattern_mass(const LevelPartition& lp) {
    std::map<std::vector<int>, Rational> mass;
    for (auto idx : lp.residual)
        for (auto& Q : patterns_of(lp.chains[idx])) mass[std::move(Q)] += lp.chains[idx].wt;
    Rational best = 0;
    for (const auto& [Q, m] : mass) best = std::max(best, m);
    return best;
}

// ---- Psi(x, y) ----

std::size_t BipartitePsi::term_count() const {
    std::size_t s = 0;
    for (const auto& g : groups)
        for (const auto& v : g.by_head) s += v.size();
    return s;
}

std::pair<int, int> classify_suffix(const Partition& p, const std::vector<int>& rchain) {
    const int r = static_cast<int>(rchain.size() - 1) / 3;
    for (int t = std::min(r, p.r); t >= 1; --t) {
        std::vector<int> suffix(rchain.begin() + 3 * (r - t), rchain.end());
        const auto& map = p.levels[t].part_of_chain;
        auto it = map.find(suffix);
        if (it != map.end()) return {t, static_cast<int>(it->second)};
    }
    return {0, rchain.back()};
}

BipartitePsi bipartite_psi(const HypergraphCollection& col, const Partition& p, const std::vector<int>& heads,
                           const SignVec& b, std::uint64_t budget) {
    check_heads(col, heads, b);
    BipartitePsi bp;
    bp.n = col.n;
    bp.r = p.r;
    bp.heads = heads;
    bp.b = b;
    const int r = p.r;
    const int k = static_cast<int>(heads.size());
    for (int i = 0; i < k; ++i)
        for_each_weighted_chain(col, heads[i], r + 1, TailKind::Hyper, [&](const WeightedChain& c) {
            std::vector<int> suffix(c.seq.begin() + 3, c.seq.end());
            auto key = classify_suffix(p, suffix);
            auto it = bp.group_index.find(key);
            if (it == bp.group_index.end()) {
                PsiGroup g;
                g.level = key.first;
                if (key.first == 0) {
                    g.Q = {key.second};
                    g.wtQ = 1;
                } else {
                    const auto& part = p.levels[key.first].parts[key.second];
                    g.Q = part.Q;
                    g.wtQ = part.wt;
                }
                g.by_head.resize(k);
                it = bp.group_index.emplace(key, bp.groups.size()).first;
                bp.groups.push_back(std::move(g));
            }
            auto& g = bp.groups[it->second];
            const int t = g.level;
            std::vector<int> vars;
            for (int h = 0; h <= r; ++h) {
                int a = c.left(h), bb = c.right(h);
                int qpos = h - (r + 1 - t);  // index into Q for the last t links
                if (qpos >= 0) {
                    int q = g.Q[qpos];
                    if (a == q) vars.push_back(bb);
                    else if (bb == q) vars.push_back(a);
                    else throw std::logic_error("chain does not contain its group's pattern");
                } else {
                    vars.push_back(a);
                    vars.push_back(bb);
                }
            }
            g.by_head[i].push_back({c.seq, c.wt, odd_variables(vars)});
        }, budget);
    return bp;
}

Rational psi_iq(const PsiGroup& g, int i, const SignVec& x) {
    Rational s = 0;
    for (const auto& term : g.by_head[i]) {
        int sign = 1;
        for (int v : term.vars) sign *= x[v];
        s += sign * term.wt;
    }
    return s;
}

Rational psi_iq_mass(const PsiGroup& g, int i) {
    Rational s = 0;
    for (const auto& term : g.by_head[i]) s += term.wt;
    return s;
}

SignVec y_of_x(const BipartitePsi& bp, const SignVec& x) {
    SignVec y;
    y.reserve(bp.groups.size());
    for (const auto& g : bp.groups) {
        int s = 1;
        for (int v : g.Q) s *= x[v];
        y.push_back(s);
    }
    return y;
}

Rational psi_xy(const BipartitePsi& bp, const SignVec& x, const SignVec& y) {
    Rational s = 0;
    for (std::size_t q = 0; q < bp.groups.size(); ++q)
        for (std::size_t i = 0; i < bp.heads.size(); ++i)
            s += bp.b[i] * y[q] * psi_iq(bp.groups[q], static_cast<int>(i), x);
    return s;
}

std::vector<DirectedMatching> round_robin_directed_matchings(int k) {
    std::vector<DirectedMatching> out;
    if (k < 2) return out;
    const int K = k % 2 == 0 ? k : k + 1;  // K - 1 is a dummy when k is odd
    for (int round = 0; round < K - 1; ++round) {
        DirectedMatching fwd, bwd;
        auto add = [&](int a, int b) {
            if (a >= k || b >= k) return;
            fwd.emplace_back(a, b);
            bwd.emplace_back(b, a);
        };
        add(K - 1, round);
        for (int s = 1; s < K / 2; ++s) add((round + s) % (K - 1), (round - s + K - 1) % (K - 1));
        std::sort(fwd.begin(), fwd.end());
        std::sort(bwd.begin(), bwd.end());
        out.push_back(std::move(fwd));
        out.push_back(std::move(bwd));
    }
    return out;
}

Rational cross_term(const BipartitePsi& bp, const DirectedMatching& M, const SignVec& x) {
    Rational s = 0;
    for (const auto& g : bp.groups)
        for (auto [i, j] : M) {
            Rational a = psi_iq(g, i, x);
            if (a == 0) continue;
            s += bp.b[i] * bp.b[j] * a * psi_iq(g, j, x) / g.wtQ;
        }
    return s;
}

Rational group_weight(const BipartitePsi& bp) {
    Rational s = 0;
    for (const auto& g : bp.groups) s += g.wtQ;
    return s;
}

Rational diagonal_bound(const BipartitePsi& bp) {
    Rational s = 0;
    for (const auto& g : bp.groups)
        for (std::size_t i = 0; i < bp.heads.size(); ++i) {
            Rational m = psi_iq_mass(g, static_cast<int>(i));
            s += m * m / g.wtQ;
        }
    return s;
}

Rational chain_smoothness_ratio(const BipartitePsi& bp, const Rational& delta) {
    Rational best = 0;
    for (const auto& g : bp.groups)
        for (std::size_t i = 0; i < bp.heads.size(); ++i)
            best = std::max(best, Rational(psi_iq_mass(g, static_cast<int>(i)) * delta * bp.n / g.wtQ));
    return best;
}

// ---- files ----

std::string instance_to_jsonl(const ChainXorInstance& inst) {
    std::ostringstream os;
    std::string kind = inst.kind == InstanceKind::Psi ? "psi" : "phi_" + std::to_string(inst.t);
    for (const auto& term : inst.terms) {
        nlohmann::ordered_json j;
        j["i"] = term.i + 1;
        std::vector<int> tuple;
        for (int v : term.seq) tuple.push_back(v + 1);
        j["tuple"] = tuple;
        j["w"] = rat_str(term.coef);
        j["kind"] = kind;
        os << j.dump() << '\n';
    }
    return os.str();
}

ChainXorInstance instance_from_jsonl(const std::string& text, int nvars) {
    ChainXorInstance inst;
    inst.nvars = nvars;
    std::istringstream is(text);
    std::string line;
    std::map<int, std::pair<int, int>> head_sign;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto j = nlohmann::json::parse(line);
        XorTerm term;
        term.i = j.at("i").get<int>() - 1;
        for (const auto& v : j.at("tuple")) {
            int x = v.get<int>() - 1;
            if (x < 0 || x >= nvars) throw std::invalid_argument("tuple entry out of range");
            term.seq.push_back(x);
        }
        term.coef = parse_rat(j.at("w").get<std::string>());
        std::string kind = j.at("kind").get<std::string>();
        bool psi = kind == "psi";
        if (!psi && kind.rfind("phi_", 0) != 0) throw std::invalid_argument("unknown instance kind " + kind);
        int links = psi ? static_cast<int>(term.seq.size() - 1) / 3 : static_cast<int>(term.seq.size()) / 3;
        if (first) {
            inst.kind = psi ? InstanceKind::Psi : InstanceKind::Phi;
            inst.t = links;
            inst.r = psi ? links - 1 : 0;
            first = false;
        }
        WeightedChain c{term.seq, abs(term.coef), psi ? TailKind::Hyper : TailKind::Graph};
        term.vars = odd_variables(c.monomial());
        int sign = term.coef < 0 ? -1 : 1;
        auto [it, fresh] = head_sign.emplace(term.i, std::make_pair(term.seq.front(), sign));
        if (!fresh && it->second != std::make_pair(term.seq.front(), sign))
            throw std::invalid_argument("message index with inconsistent head or sign");
        inst.terms.push_back(std::move(term));
    }
    int k = head_sign.empty() ? 0 : head_sign.rbegin()->first + 1;
    inst.heads.assign(k, 0);
    inst.b.assign(k, 1);
    for (const auto& [i, hs] : head_sign) {
        inst.heads[i] = hs.first;
        inst.b[i] = hs.second;
    }
    return inst;
}

HypergraphCollection random_collection(const RandomCollectionSpec& spec, std::mt19937_64& rng) {
    if (spec.n < 3) throw std::invalid_argument("need at least 3 vertices");
    HypergraphCollection col;
    col.n = spec.n;
    col.H.assign(spec.n, {});
    col.G.assign(spec.n, {});
    std::uniform_int_distribution<int> vert(0, spec.n - 1), wdist(1, 6);
    for (int u = 0; u < spec.n; ++u) {
        std::map<std::array<int, 3>, int> raw;
        while (static_cast<int>(raw.size()) < spec.triples) {
            std::array<int, 3> e{vert(rng), vert(rng), vert(rng)};
            if (e[0] == e[1] || e[0] == e[2] || e[1] == e[2]) continue;
            raw[e] = wdist(rng);
        }
        int total = 0;
        for (const auto& [e, w] : raw) total += w;
        Rational h_mass = spec.full_h_mass ? Rational(1) : Rational(wdist(rng), 6);
        for (const auto& [e, w] : raw) col.H[u][e] = h_mass * Rational(w, total);
        std::map<std::array<int, 2>, int> graw;
        while (static_cast<int>(graw.size()) < spec.edges) {
            std::array<int, 2> e{vert(rng), vert(rng)};
            if (e[0] == e[1]) continue;
            graw[e] = wdist(rng);
        }
        int gtotal = 0;
        for (const auto& [e, w] : graw) gtotal += w;
        Rational g_mass = Rational(wdist(rng), 2);  // at most 3
        for (const auto& [e, w] : graw) col.G[u][e] = g_mass * Rational(w, gtotal);
        for (auto& [e, w] : col.H[u]) w.canonicalize();
        for (auto& [e, w] : col.G[u]) w.canonicalize();
    }
    return col;
}

Rational collection_delta(const HypergraphCollection& col) {
    Rational worst = 0;
    for (int u = 0; u < col.n; ++u) {
        std::vector<Rational> inc(col.n);
        for (const auto& [e, w] : col.H[u])
            for (int v : e) inc[v] += w;
        for (const auto& [e, w] : col.G[u])
            for (int v : e) inc[v] += w;
        for (const auto& w : inc) worst = std::max(worst, w);
    }
    if (worst == 0) throw std::invalid_argument("empty collection");
    return 1 / (worst * col.n);
}

}  // namespace lcc
