#include "lcc/design_codes.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lcc {

std::vector<F4> point_coords(int index, int t) {
    std::vector<F4> c(t);
    for (int i = t - 1; i >= 0; --i) {
        c[i] = F4(index & 3);
        index >>= 2;
    }
    return c;
}

int point_index(const std::vector<F4>& coords) {
    int idx = 0;
    for (F4 c : coords) idx = idx * 4 + c.v;
    return idx;
}

Design rm_design(int t, std::size_t max_points) {
    if (t < 1) throw std::invalid_argument("t must be positive");
    if (t > 15 || (std::size_t{1} << (2 * t)) > max_points) {
        throw std::length_error("design size exceeds budget");
    }
    const int n = 1 << (2 * t);
    Design d;
    d.n = n;
    d.blocks.reserve(static_cast<std::size_t>(n) * (n - 1) / 12);
    // Coordinatewise, point addition is XOR of the codes, so p + s*(q-p)
    // can be formed by scaling the XOR difference.
    for (int p = 0; p < n; ++p) {
        auto pc = point_coords(p, t);
        for (int q = p + 1; q < n; ++q) {
            auto qc = point_coords(q, t);
            Block line{};
            int at = 0;
            for (unsigned s = 0; s < 4; ++s) {
                std::vector<F4> x(t);
                for (int i = 0; i < t; ++i) x[i] = pc[i] + F4(s) * (qc[i] + pc[i]);
                line[at++] = point_index(x);
            }
            std::sort(line.begin(), line.end());
            if (line[0] == p && line[1] == q) d.blocks.push_back(line);
        }
    }
    std::sort(d.blocks.begin(), d.blocks.end());
    return d;
}

DesignCheck verify_design(const Design& d) {
    std::vector<int> cover(static_cast<std::size_t>(d.n) * d.n, 0);
    DesignCheck out;
    bool malformed = false;
    for (const auto& b : d.blocks) {
        for (int i = 0; i < 4; ++i) {
            if (b[i] < 0 || b[i] >= d.n) malformed = true;
            for (int j = i + 1; j < 4; ++j)
                if (b[i] == b[j]) malformed = true;
        }
        if (malformed) break;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) {
                int a = std::min(b[i], b[j]), c = std::max(b[i], b[j]);
                ++cover[static_cast<std::size_t>(a) * d.n + c];
            }
    }
    if (malformed) {
        out.pass = false;
        return out;
    }
    for (int a = 0; a < d.n; ++a)
        for (int c = a + 1; c < d.n; ++c) {
            int k = cover[static_cast<std::size_t>(a) * d.n + c];
            if (k == 1) continue;
            if (k == 0) ++out.uncovered_pairs;
            else ++out.multiply_covered_pairs;
            if (!out.first_violation) out.first_violation = {a, c};
        }
    out.pass = out.uncovered_pairs == 0 && out.multiply_covered_pairs == 0;
    return out;
}

BitMatrix incidence_matrix(const Design& d) {
    BitMatrix m(d.blocks.size(), d.n);
    for (std::size_t i = 0; i < d.blocks.size(); ++i)
        for (int p : d.blocks[i]) m.rows[i].set(p);
    return m;
}

DesignLcc make_design_lcc(Design d) {
    DesignLcc lcc;
    lcc.incidence = incidence_matrix(d);
    auto rn = rank_and_nullspace(lcc.incidence);
    lcc.dual_basis = std::move(rn.nullspace);
    lcc.k = lcc.dual_basis.size();
    lcc.design = std::move(d);
    return lcc;
}

DesignLcc build_rm_design(int t, std::size_t max_points) { return make_design_lcc(rm_design(t, max_points)); }

MatchingFamily derive_matchings(const DesignLcc& lcc) {
    const Design& d = lcc.design;
    auto check = verify_design(d);
    if (!check.pass) throw std::invalid_argument("not a 2-(n,4,1) design");
    MatchingFamily m;
    m.n = d.n;
    m.at.assign(d.n, {});
    for (const auto& b : d.blocks) {
        for (int i = 0; i < 4; ++i) {
            Triple tr{};
            int at = 0;
            for (int j = 0; j < 4; ++j)
                if (j != i) tr[at++] = b[j];
            m.at[b[i]].push_back(tr);
        }
    }
    for (auto& h : m.at) std::sort(h.begin(), h.end());
    return m;
}

bool matching_is_perfect(const MatchingFamily& m, int u) {
    std::vector<int> seen(m.n, 0);
    seen[u] = 1;
    for (const auto& tr : m.at[u])
        for (int v : tr) ++seen[v];
    return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

std::size_t count_matching_parity_failures(const DesignLcc& lcc, const MatchingFamily& m,
                                           std::size_t* checks_done) {
    std::size_t fails = 0, checks = 0;
    for (int u = 0; u < m.n; ++u)
        for (const auto& tr : m.at[u])
            for (const auto& x : lcc.dual_basis) {
                ++checks;
                bool rhs = x.get(tr[0]) ^ x.get(tr[1]) ^ x.get(tr[2]);
                if (x.get(u) != rhs) ++fails;
            }
    if (checks_done) *checks_done = checks;
    return fails;
}

PairIndex::PairIndex(const Design& d) : n_(d.n), table_(static_cast<std::size_t>(d.n) * d.n, -1) {
    for (std::size_t bi = 0; bi < d.blocks.size(); ++bi) {
        const auto& b = d.blocks[bi];
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (i != j) table_[static_cast<std::size_t>(b[i]) * n_ + b[j]] = static_cast<int>(bi);
    }
}

std::vector<Monomial> monomial_basis(int t, bool squares) {
    std::vector<Monomial> out;
    out.push_back({-1, -1});
    for (int i = 0; i < t; ++i) out.push_back({i, -1});
    for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) out.push_back({i, j});
    if (squares)
        for (int i = 0; i < t; ++i) out.push_back({i, i});
    return out;
}

F4 eval_monomial(const Monomial& m, const std::vector<F4>& x) {
    if (m.i < 0) return kF4One;
    if (m.j < 0) return x[m.i];
    return x[m.i] * x[m.j];
}

std::vector<std::size_t> DimensionReport::matching_rows() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].image_dim == claimed_k) out.push_back(i);
    return out;
}

DimensionReport code_dimension_report(int t) {
    DesignLcc lcc = build_rm_design(t);
    DimensionReport rep;
    rep.t = t;
    rep.n = lcc.design.n;
    rep.dim_v = lcc.k;
    rep.claimed_k = 1 + t + t * (t - 1) / 2;

    std::vector<std::vector<F4>> pts;
    for (int p = 0; p < rep.n; ++p) pts.push_back(point_coords(p, t));

    for (Projection proj : {Projection::Trace, Projection::Const, Projection::TraceBeta})
        for (Coeffs cf : {Coeffs::F4, Coeffs::F2})
            for (bool sq : {false, true}) {
                std::vector<F4> scalars{kF4One};
                if (cf == Coeffs::F4) scalars.push_back(kF4Beta);
                std::vector<BitVec> gens;
                for (const auto& mono : monomial_basis(t, sq))
                    for (F4 c : scalars) {
                        BitVec v(rep.n);
                        for (int p = 0; p < rep.n; ++p) v.set(p, project(proj, c * eval_monomial(mono, pts[p])));
                        gens.push_back(std::move(v));
                    }
                bool inside = true;
                for (const auto& g : gens)
                    if (lcc.incidence.apply(g).any()) inside = false;
                rep.rows.push_back({proj, cf, sq, rank_of(gens, rep.n), inside});
            }
    return rep;
}

bool blocklength_bound_holds(std::size_t n, std::size_t k) {
    return std::log2(static_cast<double>(n)) <= 2.0 * std::sqrt(2.0 * static_cast<double>(k));
}

std::string design_to_json(const DesignLcc& lcc) {
    nlohmann::ordered_json j;
    j["n"] = lcc.design.n;
    auto blocks = nlohmann::ordered_json::array();
    for (const auto& b : lcc.design.blocks) blocks.push_back({b[0] + 1, b[1] + 1, b[2] + 1, b[3] + 1});
    j["blocks"] = blocks;
    j["k"] = lcc.k;
    auto basis = nlohmann::ordered_json::array();
    for (const auto& v : lcc.dual_basis) basis.push_back(v.to_hex());
    j["dual_basis"] = basis;
    return j.dump() + "\n";
}

DesignLcc design_from_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    Design d;
    d.n = j.at("n").get<int>();
    if (d.n <= 0) throw std::invalid_argument("design n must be positive");
    for (const auto& b : j.at("blocks")) {
        Block blk{};
        if (b.size() != 4) throw std::invalid_argument("block must have 4 points");
        for (int i = 0; i < 4; ++i) {
            int p = b[i].get<int>() - 1;
            if (p < 0 || p >= d.n) throw std::invalid_argument("block point out of range");
            blk[i] = p;
        }
        std::sort(blk.begin(), blk.end());
        d.blocks.push_back(blk);
    }
    DesignLcc lcc = make_design_lcc(std::move(d));
    if (j.contains("dual_basis")) {
        std::vector<BitVec> given;
        for (const auto& h : j["dual_basis"]) given.push_back(BitVec::from_hex(h.get<std::string>(), lcc.design.n));
        for (const auto& g : given)
            if (lcc.incidence.apply(g).any()) throw std::invalid_argument("dual basis vector violates a block parity");
        if (rank_of(given, lcc.design.n) != given.size()) throw std::invalid_argument("dual basis is dependent");
        lcc.dual_basis = std::move(given);
        lcc.k = lcc.dual_basis.size();
    }
    return lcc;
}

}  // namespace lcc
