#include "lcc/decoder_model.hpp"

#include "lcc/design_codes.hpp"
#include "json.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace lcc {

int tag_value(Tag t, int a3) {
    switch (t) {
        case Tag::PlusOne: return 1;
        case Tag::MinusOne: return -1;
        case Tag::PlusA3: return a3;
        case Tag::MinusA3: return -a3;
    }
    return 0;
}

bool tag_is_constant(Tag t) { return t == Tag::PlusOne || t == Tag::MinusOne; }
int tag_sign(Tag t) { return (t == Tag::PlusOne || t == Tag::PlusA3) ? 1 : -1; }

namespace {

Tag flip(Tag t) {
    switch (t) {
        case Tag::PlusOne: return Tag::MinusOne;
        case Tag::MinusOne: return Tag::PlusOne;
        case Tag::PlusA3: return Tag::MinusA3;
        case Tag::MinusA3: return Tag::PlusA3;
    }
    return t;
}

void fail(int u, const std::string& what) {
    throw std::invalid_argument("decoder for index " + std::to_string(u) + ": " + what);
}

template <class Q>
void check_dist(int u, const std::vector<Q>& qs, const char* level) {
    if (qs.empty()) fail(u, std::string("empty ") + level + " distribution");
    Rational s = 0;
    for (const auto& q : qs) {
        if (q.p < 0) fail(u, std::string("negative probability at ") + level);
        s += q.p;
    }
    if (s != 1) fail(u, std::string(level) + " distribution sums to " + rat_str(s));
}

}  // namespace

void validate_tree(const DecoderTree& tree) {
    if (tree.n <= 0 || static_cast<int>(tree.at.size()) != tree.n) throw std::invalid_argument("decoder count != n");
    auto in_range = [&](int v) { return v >= 0 && v < tree.n; };
    for (int u = 0; u < tree.n; ++u) {
        const auto& d = tree.at[u];
        check_dist(u, d.first, "first query");
        for (const auto& q1 : d.first) {
            if (!in_range(q1.v)) fail(u, "query out of range");
            for (const auto& b1 : q1.next) {
                check_dist(u, b1, "second query");
                for (const auto& q2 : b1) {
                    if (!in_range(q2.v) || q2.v == q1.v) fail(u, "second query repeats or out of range");
                    for (const auto& b2 : q2.next) {
                        check_dist(u, b2, "third query");
                        for (const auto& q3 : b2) {
                            if (!in_range(q3.v) || q3.v == q1.v || q3.v == q2.v)
                                fail(u, "third query repeats or out of range");
                            Rational s = 0;
                            if (q3.leaf.mix.empty()) fail(u, "empty leaf");
                            for (const auto& [tag, p] : q3.leaf.mix) {
                                if (p < 0) fail(u, "negative leaf probability");
                                s += p;
                            }
                            if (s != 1) fail(u, "leaf mix sums to " + rat_str(s));
                        }
                    }
                }
            }
        }
    }
}

Rational simulate_decoder(const DecoderTree& tree, int u, const SignVec& x) {
    Rational e = 0;
    for (const auto& q1 : tree.at[u].first) {
        Rational e1 = 0;
        for (const auto& q2 : q1.next[branch_of(x[q1.v])]) {
            Rational e2 = 0;
            for (const auto& q3 : q2.next[branch_of(x[q2.v])]) {
                Rational e3 = 0;
                for (const auto& [tag, p] : q3.leaf.mix) e3 += p * tag_value(tag, x[q3.v]);
                e2 += q3.p * e3;
            }
            e1 += q2.p * e2;
        }
        e += q1.p * e1;
    }
    return e;
}

Rational max_query_probability(const DecoderTree& tree, int u, int v) {
    Rational total = 0;
    for (const auto& q1 : tree.at[u].first) {
        Rational best1 = 0;
        for (const auto& b1 : q1.next) {
            Rational s1 = 0;
            for (const auto& q2 : b1) {
                Rational best2 = 0;
                for (const auto& b2 : q2.next) {
                    Rational s2 = 0;
                    for (const auto& q3 : b2)
                        if (q3.v == v) s2 += q3.p;
                    best2 = std::max(best2, s2);
                }
                s1 += q2.p * ((q2.v == v ? Rational(1) : Rational(0)) + best2);
            }
            best1 = std::max(best1, s1);
        }
        total += q1.p * ((q1.v == v ? Rational(1) : Rational(0)) + best1);
    }
    return total;
}

Rational measured_delta(const DecoderTree& tree) {
    Rational worst = 0;
    for (int u = 0; u < tree.n; ++u)
        for (int v = 0; v < tree.n; ++v) worst = std::max(worst, max_query_probability(tree, u, v));
    if (worst == 0) throw std::invalid_argument("decoder makes no queries");
    return 1 / (worst * tree.n);
}

int and_poly(int s1, int s2) {
    if ((s1 != 1 && s1 != -1) || (s2 != 1 && s2 != -1)) throw std::invalid_argument("AND takes +-1 inputs");
    return (1 + s1) * (1 + s2) / 4;
}

std::vector<Transcript> transcripts(const DecoderTree& tree, int u) {
    std::vector<Transcript> out;
    for (const auto& q1 : tree.at[u].first)
        for (int a1 : {1, -1})
            for (const auto& q2 : q1.next[branch_of(a1)])
                for (int a2 : {1, -1})
                    for (const auto& q3 : q2.next[branch_of(a2)])
                        for (std::size_t j = 0; j < q3.leaf.mix.size(); ++j) {
                            const auto& [tag, p] = q3.leaf.mix[j];
                            Rational w = q1.p * q2.p * q3.p * p;
                            if (w == 0) continue;
                            out.push_back({q1.v, a1, q2.v, a2, q3.v, static_cast<int>(j), tag, w});
                        }
    return out;
}

WeightSystem compile_and_weights(const DecoderTree& tree, int u) {
    WeightSystem ws;
    for (const auto& t : transcripts(tree, u)) {
        if (tag_is_constant(t.tag)) ws.g.push_back({t.v1, t.a1, t.v2, t.a2, t.v3, t.rand, tag_sign(t.tag), t.wt});
        else ws.h.push_back({t.v1, t.a1, t.v2, t.a2, t.v3, t.rand, tag_sign(t.tag), t.wt});
    }
    return ws;
}

Rational wt_total(const WeightSystem& ws) {
    Rational s = 0;
    for (const auto& g : ws.g) s += g.wt;
    for (const auto& h : ws.h) s += h.wt;
    return s;
}

Rational wt_and_sum(const WeightSystem& ws, const SignVec& x) {
    Rational s = 0;
    for (const auto& g : ws.g) s += g.wt * and_poly(g.a1 * x[g.v1], g.a2 * x[g.v2]);
    for (const auto& h : ws.h) s += h.wt * and_poly(h.a1 * x[h.v1], h.a2 * x[h.v2]);
    return s;
}

Rational wt_poly_sum(const WeightSystem& ws, const SignVec& x) {
    Rational s = 0;
    for (const auto& g : ws.g) s += g.wt * g.sigma * and_poly(g.a1 * x[g.v1], g.a2 * x[g.v2]);
    for (const auto& h : ws.h) s += h.wt * h.sigma * x[h.v3] * and_poly(h.a1 * x[h.v1], h.a2 * x[h.v2]);
    return s;
}

Rational and_system_max_incident(const WeightSystem& ws) {
    std::map<int, Rational> inc;
    for (const auto& g : ws.g) {
        inc[g.v1] += g.wt;
        inc[g.v2] += g.wt;
    }
    for (const auto& h : ws.h) {
        inc[h.v1] += h.wt;
        inc[h.v2] += h.wt;
        inc[h.v3] += h.wt;
    }
    Rational best = 0;
    for (const auto& [v, w] : inc) best = std::max(best, w);
    return best;
}

Code padded_code(const Code& base) {
    Code p;
    p.n = 4 * base.n;
    p.k = base.k;
    p.messages = base.messages;
    p.systematic = base.systematic;
    for (const auto& x : base.codewords) {
        SignVec y(p.n);
        for (int v = 0; v < base.n; ++v) {
            y[v] = x[v];
            y[base.n + v] = -x[v];
            y[2 * base.n + v] = 1;
            y[3 * base.n + v] = -1;
        }
        p.codewords.push_back(std::move(y));
    }
    return p;
}

Rational HypergraphCollection::total_H(int u) const {
    Rational s = 0;
    for (const auto& [e, w] : H[u]) s += w;
    return s;
}

Rational HypergraphCollection::total_G(int u) const {
    Rational s = 0;
    for (const auto& [e, w] : G[u]) s += w;
    return s;
}

Rational HypergraphCollection::incident(int u, int v) const {
    Rational s = 0;
    for (const auto& [e, w] : H[u])
        if (e[0] == v || e[1] == v || e[2] == v) s += w;
    for (const auto& [e, w] : G[u])
        if (e[0] == v || e[1] == v) s += w;
    return s;
}

Rational HypergraphCollection::f(int u, const SignVec& x) const {
    Rational s = 0;
    for (const auto& [e, w] : H[u]) s += w * (x[e[0]] * x[e[1]] * x[e[2]]);
    for (const auto& [e, w] : G[u]) s += w * (x[e[0]] * x[e[1]]);
    return s;
}

Rational padded_expectation(const DecoderTree& tree, int u, const SignVec& y) {
    const int n = tree.n;
    if (u < 2 * n) {
        SignVec x(y.begin(), y.begin() + n);
        Rational e = simulate_decoder(tree, u % n, x);
        return u < n ? e : Rational(-e);
    }
    return u < 3 * n ? 1 : -1;
}

CompileReport compile_collection(const DecoderTree& tree, const Code& base) {
    validate_tree(tree);
    if (base.n != tree.n) throw std::invalid_argument("code and decoder disagree on n");
    const int n = tree.n;
    Padded P{n};
    CompileReport rep;
    auto& col = rep.col;
    col.n = 4 * n;
    col.H.assign(col.n, {});
    col.G.assign(col.n, {});
    auto addG = [&](int u, int a, int b, const Rational& w) {
        if (a == b) throw std::logic_error("degenerate graph edge");
        col.G[u][{a, b}] += w;
    };

    const Rational quarter(1, 4);
    for (int u = 0; u < n; ++u) {
        auto ws = compile_and_weights(tree, u);
        for (const auto& g : ws.g) {
            Rational w = quarter * g.wt;
            addG(u, P.constant(g.sigma, g.v1), P.one(g.v2), w);
            addG(u, P.signed_vertex(g.a1, g.v1), P.constant(g.sigma, g.v2), w);
            addG(u, P.constant(g.sigma, g.v1), P.signed_vertex(g.a2, g.v2), w);
            addG(u, P.signed_vertex(g.sigma * g.a1, g.v1), P.signed_vertex(g.a2, g.v2), w);
        }
        for (const auto& h : ws.h) {
            Rational w = quarter * h.wt;
            col.H[u][{P.signed_vertex(h.sigma * h.a1, h.v1), P.signed_vertex(h.a2, h.v2), h.v3}] += w;
            addG(u, P.constant(h.sigma, h.v1), h.v3, w);
            addG(u, P.signed_vertex(h.sigma * h.a1, h.v1), h.v3, w);
            addG(u, P.signed_vertex(h.sigma * h.a2, h.v2), h.v3, w);
        }
        // index n+u decodes -x_u: negate the first vertex of every edge
        for (const auto& [e, w] : col.H[u]) col.H[n + u][{P.negate(e[0]), e[1], e[2]}] += w;
        for (const auto& [e, w] : col.G[u]) col.G[n + u][{P.negate(e[0]), e[1]}] += w;
    }
    const Rational same(1, 2 * n * (n - 1)), mixed(1, 2 * n * n);
    for (int u = 2 * n; u < 3 * n; ++u)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (a == b) continue;
                addG(u, P.one(a), P.one(b), same);
                addG(u, P.minus_one(a), P.minus_one(b), same);
            }
    for (int u = 3 * n; u < 4 * n; ++u)
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                addG(u, P.one(a), P.minus_one(b), mixed);
                addG(u, P.minus_one(a), P.one(b), mixed);
            }

    for (int u = 0; u < col.n; ++u) {
        Rational th = col.total_H(u), tg = col.total_G(u);
        if (th > 1 || th + tg > 4) rep.normalization_ok = false;
        for (const auto& [e, w] : col.H[u])
            if (e[0] == e[1] || e[0] == e[2] || e[1] == e[2]) rep.normalization_ok = false;
    }

    Code padded = padded_code(base);
    for (const auto& y : padded.codewords)
        for (int u = 0; u < col.n; ++u)
            if (col.f(u, y) != padded_expectation(tree, u, y)) ++rep.identity_failures;

    rep.delta = measured_delta(tree);
    rep.max_incident = 0;
    for (int u = 0; u < col.n; ++u)
        for (int v = 0; v < col.n; ++v) {
            Rational inc = col.incident(u, v);
            if (inc > rep.max_incident) {
                rep.max_incident = inc;
                rep.worst_u = u;
                rep.worst_v = v;
            }
        }
    rep.c = rep.max_incident * rep.delta * col.n;
    return rep;
}

// ---- codes and decoders of the toy zoo ----

Code hadamard_code(int k) {
    Code c;
    c.k = k;
    c.n = 1 << k;
    for (int i = 0; i < k; ++i) c.systematic.push_back(1 << i);
    for (int m = 0; m < (1 << k); ++m) {
        SignVec x(c.n), b(k);
        for (int a = 0; a < c.n; ++a) x[a] = (std::popcount(static_cast<unsigned>(a & m)) & 1) ? -1 : 1;
        for (int i = 0; i < k; ++i) b[i] = ((m >> i) & 1) ? -1 : 1;
        c.codewords.push_back(x);
        c.messages.push_back(b);
    }
    return c;
}

Code design_code(int t) {
    DesignLcc lcc = build_rm_design(t);
    BitMatrix m;
    m.cols = lcc.design.n;
    m.rows = lcc.dual_basis;
    RrefResult rr = rref(m);
    Code c;
    c.n = lcc.design.n;
    c.k = static_cast<int>(rr.rows.size());
    for (auto p : rr.pivots) c.systematic.push_back(static_cast<int>(p));
    if (c.k > 16) throw std::length_error("design code too large to list");
    for (int msg = 0; msg < (1 << c.k); ++msg) {
        BitVec x(c.n);
        for (int j = 0; j < c.k; ++j)
            if ((msg >> j) & 1) x ^= rr.rows[j];
        SignVec sx(c.n), b(c.k);
        for (int v = 0; v < c.n; ++v) sx[v] = x.get(v) ? -1 : 1;
        for (int j = 0; j < c.k; ++j) b[j] = ((msg >> j) & 1) ? -1 : 1;
        c.codewords.push_back(sx);
        c.messages.push_back(b);
    }
    return c;
}

namespace {

LeafRule parity_leaf(int a1, int a2) { return {{{a1 * a2 == 1 ? Tag::PlusA3 : Tag::MinusA3, Rational(1)}}}; }

}  // namespace

DecoderTree hadamard_decoder(int k) {
    DecoderTree t;
    t.n = 1 << k;
    t.at.resize(t.n);
    for (int u = 0; u < t.n; ++u)
        for (int v1 = 0; v1 < t.n; ++v1) {
            if (v1 == u) continue;
            FirstQuery q1{v1, Rational(1, t.n - 1), {}};
            for (int a1 : {1, -1})
                for (int v2 = 0; v2 < t.n; ++v2) {
                    if (v2 == u || v2 == v1) continue;
                    SecondQuery q2{v2, Rational(1, t.n - 2), {}};
                    for (int a2 : {1, -1}) q2.next[branch_of(a2)].push_back({u ^ v1 ^ v2, Rational(1), parity_leaf(a1, a2)});
                    q1.next[branch_of(a1)].push_back(std::move(q2));
                }
            t.at[u].first.push_back(std::move(q1));
        }
    return t;
}

DecoderTree hadamard_fixed_decoder(int k) {
    DecoderTree t;
    t.n = 1 << k;
    t.at.resize(t.n);
    for (int u = 0; u < t.n; ++u) {
        int v1 = u == 0 ? 1 : 0;
        int v2 = 0;
        while (v2 == u || v2 == v1) ++v2;
        FirstQuery q1{v1, Rational(1), {}};
        for (int a1 : {1, -1}) {
            SecondQuery q2{v2, Rational(1), {}};
            for (int a2 : {1, -1}) q2.next[branch_of(a2)].push_back({u ^ v1 ^ v2, Rational(1), parity_leaf(a1, a2)});
            q1.next[branch_of(a1)].push_back(std::move(q2));
        }
        t.at[u].first.push_back(std::move(q1));
    }
    return t;
}

DecoderTree hadamard_adaptive_decoder(int k) {
    DecoderTree t;
    t.n = 1 << k;
    t.at.resize(t.n);
    for (int u = 0; u < t.n; ++u)
        for (int v1 = 0; v1 < t.n; ++v1) {
            if (v1 == u) continue;
            FirstQuery q1{v1, Rational(1, t.n - 1), {}};
            // answer +1: uniform second query; answer -1: the largest admissible index
            for (int v2 = 0; v2 < t.n; ++v2) {
                if (v2 == u || v2 == v1) continue;
                SecondQuery q2{v2, Rational(1, t.n - 2), {}};
                for (int a2 : {1, -1}) q2.next[branch_of(a2)].push_back({u ^ v1 ^ v2, Rational(1), parity_leaf(1, a2)});
                q1.next[0].push_back(std::move(q2));
            }
            int v2 = t.n - 1;
            while (v2 == u || v2 == v1) --v2;
            SecondQuery q2{v2, Rational(1), {}};
            for (int a2 : {1, -1}) q2.next[branch_of(a2)].push_back({u ^ v1 ^ v2, Rational(1), parity_leaf(-1, a2)});
            q1.next[1].push_back(std::move(q2));
            t.at[u].first.push_back(std::move(q1));
        }
    return t;
}

DecoderTree noisy_decoder(const DecoderTree& base, const Rational& eps) {
    DecoderTree t = base;
    for (auto& d : t.at)
        for (auto& q1 : d.first)
            for (auto& b1 : q1.next)
                for (auto& q2 : b1)
                    for (auto& b2 : q2.next)
                        for (auto& q3 : b2) {
                            LeafRule mixed;
                            for (const auto& [tag, p] : q3.leaf.mix) {
                                mixed.mix.push_back({tag, p * (1 - eps)});
                                mixed.mix.push_back({flip(tag), p * eps});
                            }
                            q3.leaf = std::move(mixed);
                        }
    return t;
}

DecoderTree constant_decoder(int k) {
    DecoderTree t = hadamard_decoder(k);
    for (auto& d : t.at)
        for (auto& q1 : d.first)
            for (auto& b1 : q1.next)
                for (auto& q2 : b1)
                    for (auto& b2 : q2.next)
                        for (auto& q3 : b2) q3.leaf = {{{Tag::PlusOne, Rational(1)}}};
    return t;
}

DecoderTree design_decoder(int t) {
    DesignLcc lcc = build_rm_design(t);
    MatchingFamily m = derive_matchings(lcc);
    DecoderTree tree;
    tree.n = lcc.design.n;
    tree.at.resize(tree.n);
    for (int u = 0; u < tree.n; ++u) {
        const auto& triples = m.at[u];
        Rational p1(1, 3 * static_cast<long>(triples.size()));
        for (const auto& tr : triples)
            for (int i = 0; i < 3; ++i) {
                FirstQuery q1{tr[i], p1, {}};
                for (int a1 : {1, -1})
                    for (int j = 0; j < 3; ++j) {
                        if (j == i) continue;
                        int rest = 3 - i - j;
                        SecondQuery q2{tr[j], Rational(1, 2), {}};
                        for (int a2 : {1, -1}) q2.next[branch_of(a2)].push_back({tr[rest], Rational(1), parity_leaf(a1, a2)});
                        q1.next[branch_of(a1)].push_back(std::move(q2));
                    }
                tree.at[u].first.push_back(std::move(q1));
            }
    }
    return tree;
}

std::vector<ToyCase> toy_zoo() {
    std::vector<ToyCase> zoo;
    zoo.push_back({"hadamard-k3", hadamard_code(3), hadamard_decoder(3), 0, true});
    zoo.push_back({"design-t1", design_code(1), design_decoder(1), 0, true});
    zoo.push_back({"design-t2", design_code(2), design_decoder(2), 0, true});
    zoo.push_back({"hadamard-fixed-triple", hadamard_code(3), hadamard_fixed_decoder(3), 0, true});
    zoo.push_back({"hadamard-adaptive", hadamard_code(3), hadamard_adaptive_decoder(3), 0, true});
    zoo.push_back({"hadamard-noisy", hadamard_code(3), noisy_decoder(hadamard_decoder(3), Rational(1, 20)), Rational(1, 20), false});
    zoo.push_back({"constant-plus", hadamard_code(3), constant_decoder(3), Rational(1, 2), false});
    return zoo;
}

// ---- files (1-based vertices) ----

namespace {

using ojson = nlohmann::ordered_json;

const char* tag_name(Tag t) {
    switch (t) {
        case Tag::PlusOne: return "+1";
        case Tag::MinusOne: return "-1";
        case Tag::PlusA3: return "+a3";
        case Tag::MinusA3: return "-a3";
    }
    return "?";
}

Tag parse_tag(const std::string& s) {
    if (s == "+1") return Tag::PlusOne;
    if (s == "-1") return Tag::MinusOne;
    if (s == "+a3") return Tag::PlusA3;
    if (s == "-a3") return Tag::MinusA3;
    throw std::invalid_argument("unknown leaf tag " + s);
}

template <class Q, class F>
ojson branches(const std::array<std::vector<Q>, 2>& next, F&& each) {
    ojson b;
    for (int a : {1, -1}) {
        ojson arr = ojson::array();
        for (const auto& q : next[branch_of(a)]) arr.push_back(each(q));
        b[a == 1 ? "+1" : "-1"] = arr;
    }
    return b;
}

std::string signs(const SignVec& x) {
    std::string s;
    for (int v : x) s.push_back(v == 1 ? '+' : '-');
    return s;
}

SignVec parse_signs(const std::string& s) {
    SignVec x;
    for (char c : s) {
        if (c == '+') x.push_back(1);
        else if (c == '-') x.push_back(-1);
        else throw std::invalid_argument("sign strings use + and -");
    }
    return x;
}

}  // namespace

std::string tree_to_json(const DecoderTree& tree) {
    ojson j;
    j["n"] = tree.n;
    ojson decs = ojson::array();
    for (int u = 0; u < tree.n; ++u) {
        ojson d;
        d["u"] = u + 1;
        ojson first = ojson::array();
        for (const auto& q1 : tree.at[u].first) {
            ojson o1{{"v", q1.v + 1}, {"p", rat_str(q1.p)}};
            o1["next"] = branches(q1.next, [](const SecondQuery& q2) {
                ojson o2{{"v", q2.v + 1}, {"p", rat_str(q2.p)}};
                o2["next"] = branches(q2.next, [](const ThirdQuery& q3) {
                    ojson o3{{"v", q3.v + 1}, {"p", rat_str(q3.p)}};
                    ojson leaf = ojson::array();
                    for (const auto& [tag, p] : q3.leaf.mix) leaf.push_back({tag_name(tag), rat_str(p)});
                    o3["leaf"] = leaf;
                    return o3;
                });
                return o2;
            });
            first.push_back(o1);
        }
        d["first"] = first;
        decs.push_back(d);
    }
    j["decoders"] = decs;
    return j.dump() + "\n";
}

DecoderTree tree_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    DecoderTree t;
    t.n = j.at("n").get<int>();
    if (t.n <= 0) throw std::invalid_argument("n must be positive");
    t.at.resize(t.n);
    std::vector<char> seen(t.n, 0);
    for (const auto& d : j.at("decoders")) {
        int u = d.at("u").get<int>() - 1;
        if (u < 0 || u >= t.n || seen[u]) throw std::invalid_argument("bad or repeated decoder index");
        seen[u] = 1;
        for (const auto& o1 : d.at("first")) {
            FirstQuery q1{o1.at("v").get<int>() - 1, parse_rat(o1.at("p").get<std::string>()), {}};
            for (int a1 : {1, -1})
                for (const auto& o2 : o1.at("next").at(a1 == 1 ? "+1" : "-1")) {
                    SecondQuery q2{o2.at("v").get<int>() - 1, parse_rat(o2.at("p").get<std::string>()), {}};
                    for (int a2 : {1, -1})
                        for (const auto& o3 : o2.at("next").at(a2 == 1 ? "+1" : "-1")) {
                            ThirdQuery q3{o3.at("v").get<int>() - 1, parse_rat(o3.at("p").get<std::string>()), {}};
                            for (const auto& m : o3.at("leaf"))
                                q3.leaf.mix.push_back({parse_tag(m.at(0).get<std::string>()), parse_rat(m.at(1).get<std::string>())});
                            q2.next[branch_of(a2)].push_back(std::move(q3));
                        }
                    q1.next[branch_of(a1)].push_back(std::move(q2));
                }
            t.at[u].first.push_back(std::move(q1));
        }
    }
    validate_tree(t);
    return t;
}

std::string code_to_json(const Code& code) {
    ojson j;
    j["n"] = code.n;
    j["k"] = code.k;
    ojson sys = ojson::array();
    for (int s : code.systematic) sys.push_back(s + 1);
    j["systematic"] = sys;
    ojson words = ojson::array();
    for (std::size_t i = 0; i < code.codewords.size(); ++i)
        words.push_back({{"message", signs(code.messages[i])}, {"codeword", signs(code.codewords[i])}});
    j["codewords"] = words;
    return j.dump() + "\n";
}

Code code_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Code c;
    c.n = j.at("n").get<int>();
    c.k = j.at("k").get<int>();
    for (const auto& s : j.at("systematic")) c.systematic.push_back(s.get<int>() - 1);
    for (const auto& w : j.at("codewords")) {
        c.messages.push_back(parse_signs(w.at("message").get<std::string>()));
        c.codewords.push_back(parse_signs(w.at("codeword").get<std::string>()));
        if (static_cast<int>(c.codewords.back().size()) != c.n || static_cast<int>(c.messages.back().size()) != c.k)
            throw std::invalid_argument("codeword or message has the wrong length");
    }
    return c;
}

std::string collection_to_jsonl(const HypergraphCollection& col) {
    std::ostringstream os;
    for (int u = 0; u < col.n; ++u) {
        ojson rec;
        rec["u"] = u + 1;
        ojson H = ojson::array(), G = ojson::array();
        for (const auto& [e, w] : col.H[u]) H.push_back({{"e", {e[0] + 1, e[1] + 1, e[2] + 1}}, {"w", rat_str(w)}});
        for (const auto& [e, w] : col.G[u]) G.push_back({{"e", {e[0] + 1, e[1] + 1}}, {"w", rat_str(w)}});
        rec["H"] = H;
        rec["G"] = G;
        os << rec.dump() << '\n';
    }
    return os.str();
}

HypergraphCollection collection_from_jsonl(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<nlohmann::json> recs;
    while (std::getline(is, line))
        if (!line.empty()) recs.push_back(nlohmann::json::parse(line));
    HypergraphCollection col;
    col.n = static_cast<int>(recs.size());
    col.H.assign(col.n, {});
    col.G.assign(col.n, {});
    for (const auto& rec : recs) {
        int u = rec.at("u").get<int>() - 1;
        if (u < 0 || u >= col.n) throw std::invalid_argument("collection index out of range");
        for (const auto& h : rec.at("H"))
            col.H[u][{h.at("e")[0].get<int>() - 1, h.at("e")[1].get<int>() - 1, h.at("e")[2].get<int>() - 1}] +=
                parse_rat(h.at("w").get<std::string>());
        for (const auto& g : rec.at("G"))
            col.G[u][{g.at("e")[0].get<int>() - 1, g.at("e")[1].get<int>() - 1}] += parse_rat(g.at("w").get<std::string>());
    }
    return col;
}

}  // namespace lcc
