#include "lcc/spectral_refuter.hpp"

#include "json.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace lcc {

SubsetSpace::SubsetSpace(int n_, int ell_) : n(n_), ell(ell_) {
    if (n < 1 || n > 63 || ell < 1 || ell > n) throw std::invalid_argument("need 1 <= l <= n <= 63");
    M = binom_u64(n, ell);
    if (M > 50'000'000) throw BudgetExceeded("too many subsets", 0);
    subsets.reserve(M);
    // Gosper's hack walks same-popcount masks in increasing order, which is colex order.
    Mask s = (Mask{1} << ell) - 1;
    const Mask limit = Mask{1} << n;
    while (s < limit) {
        subsets.push_back(s);
        Mask c = s & (~s + 1), r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
}

std::uint64_t LabeledMatrix::nnz() const {
    std::uint64_t s = 0;
    for (const auto& l : labels) s += l.entries.size();
    return s;
}

Integer graph_tail_D(int n, int ell, int t) { return ipow(binom(n - 2, ell - 1), t); }

Integer hyper_tail_D(int n, int ell, int r, int t) {
    return ipow(binom(n - 2, ell - 1), 2 * r + 2 - t) * ipow(binom(n, ell), t);
}

namespace {

using BlockPairs = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

// (S, T) with S = R + {a}, T = R + {b}, R an (l-1)-subset avoiding a, b and `avoid`.
BlockPairs shifted_pairs(const SubsetSpace& sp, int a, int b, int avoid) {
    BlockPairs out;
    Mask forbidden = (Mask{1} << a) | (Mask{1} << b);
    if (avoid >= 0) forbidden |= Mask{1} << avoid;
    const Mask need_a = Mask{1} << a, need_b = Mask{1} << b;
    // S ranges over l-subsets containing a and avoiding the rest of `forbidden`
    for (Mask S : sp.subsets) {
        if (!(S & need_a)) continue;
        Mask R = S & ~need_a;
        if (R & forbidden) continue;
        out.emplace_back(sp.rank(S), sp.rank(R | need_b));
    }
    return out;
}

BlockPairs diagonal_pairs(const SubsetSpace& sp) {
    BlockPairs out;
    out.reserve(sp.M);
    for (std::uint64_t i = 0; i < sp.M; ++i) out.emplace_back(i, i);
    return out;
}

std::uint64_t checked_pow(std::uint64_t base, int e) {
    std::uint64_t out = 1;
    for (int i = 0; i < e; ++i) {
        if (out > (std::uint64_t{1} << 62) / base) throw BudgetExceeded("Kikuchi dimension overflows 62 bits", 0);
        out *= base;
    }
    return out;
}

void product_entries(const std::vector<const BlockPairs*>& blocks, std::uint64_t M,
                     std::vector<std::pair<std::uint64_t, std::uint64_t>>& out) {
    std::vector<std::uint64_t> place(blocks.size());
    std::uint64_t p = 1;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        place[b] = p;
        p *= M;
    }
    std::function<void(std::size_t, std::uint64_t, std::uint64_t)> rec = [&](std::size_t b, std::uint64_t row,
                                                                              std::uint64_t col) {
        if (b == blocks.size()) {
            out.emplace_back(row, col);
            return;
        }
        for (auto [s, t] : *blocks[b]) rec(b + 1, row + s * place[b], col + t * place[b]);
    };
    rec(0, 0, 0);
}

int canonical_extra(int w) { return w == 0 ? 1 : 0; }

}  // namespace

LabeledMatrix build_graph_tail_matrix(const ChainXorInstance& phi, int ell, std::uint64_t budget) {
    if (phi.kind != InstanceKind::Phi) throw std::invalid_argument("graph-tail matrix needs a Phi instance");
    budget = scaled_budget(budget);
    LabeledMatrix A;
    A.space = SubsetSpace(phi.nvars, ell);
    A.blocks = phi.t;
    A.N = checked_pow(A.space.M, phi.t);
    A.owners = phi.k();
    const Integer D = graph_tail_D(phi.nvars, ell, phi.t);
    if (!D.fits_ulong_p()) throw BudgetExceeded("label size overflows", 0);
    std::uint64_t total = 0;
    for (const auto& term : phi.terms) {
        std::vector<BlockPairs> per(phi.t);
        std::vector<const BlockPairs*> ptrs;
        WeightedChain c{term.seq, 0, TailKind::Graph};
        for (int h = 0; h < phi.t; ++h) {
            per[h] = shifted_pairs(A.space, c.left(h), c.right(h), -1);
            ptrs.push_back(&per[h]);
        }
        KLabel lab;
        lab.owner = term.i;
        lab.D = D.get_ui();
        lab.coef = term.coef / Rational(D);
        total += lab.D;
        if (total > budget) throw BudgetExceeded("Kikuchi entry budget exceeded", total - lab.D);
        lab.entries.reserve(lab.D);
        product_entries(ptrs, A.space.M, lab.entries);
        A.labels.push_back(std::move(lab));
    }
    return A;
}

LabeledMatrix build_hyper_tail_matrix(const BipartitePsi& bp, const DirectedMatching& Mt, int ell,
                                      std::uint64_t budget) {
    budget = scaled_budget(budget);
    const int r = bp.r;
    LabeledMatrix A;
    A.space = SubsetSpace(bp.n, ell);
    A.blocks = 2 * r + 2;
    A.N = checked_pow(A.space.M, A.blocks);
    A.owners = static_cast<int>(Mt.size());
    const BlockPairs diag = diagonal_pairs(A.space);
    std::uint64_t total = 0;
    for (const auto& g : bp.groups) {
        const int t = g.level;
        const Integer D = hyper_tail_D(bp.n, ell, r, t);
        if (!D.fits_ulong_p()) throw BudgetExceeded("label size overflows", 0);
        for (std::size_t p = 0; p < Mt.size(); ++p) {
            auto [i, j] = Mt[p];
            for (const auto& C : g.by_head[i])
                for (const auto& Cp : g.by_head[j]) {
                    WeightedChain c{C.seq, 0, TailKind::Hyper}, cp{Cp.seq, 0, TailKind::Hyper};
                    std::vector<BlockPairs> per(A.blocks);
                    std::vector<const BlockPairs*> ptrs(A.blocks);
                    for (int h = 0; h <= r - t; ++h) {
                        per[h] = shifted_pairs(A.space, c.left(h), c.right(h), -1);
                        per[r + 1 + h] = shifted_pairs(A.space, cp.left(h), cp.right(h), -1);
                        ptrs[h] = &per[h];
                        ptrs[r + 1 + h] = &per[r + 1 + h];
                    }
                    for (int h = 1; h <= t; ++h) {
                        int link = r - t + h;
                        int q = g.Q[h - 1];
                        int w = c.left(link) == q ? c.right(link) : c.left(link);
                        int wp = cp.left(link) == q ? cp.right(link) : cp.left(link);
                        per[link] = w == wp ? shifted_pairs(A.space, w, w, canonical_extra(w))
                                            : shifted_pairs(A.space, w, wp, -1);
                        ptrs[link] = &per[link];
                        ptrs[r + 1 + link] = &diag;
                    }
                    KLabel lab;
                    lab.owner = static_cast<int>(p);
                    lab.D = D.get_ui();
                    lab.coef = Rational(bp.b[i] * bp.b[j]) * C.wt * Cp.wt / (g.wtQ * Rational(D));
                    total += lab.D;
                    if (total > budget) throw BudgetExceeded("Kikuchi entry budget exceeded", total - lab.D);
                    lab.entries.reserve(lab.D);
                    product_entries(ptrs, A.space.M, lab.entries);
                    A.labels.push_back(std::move(lab));
                }
        }
    }
    return A;
}

Rational quadratic_form(const LabeledMatrix& A, const SignVec& x) {
    std::vector<int> sign(A.space.M);
    for (std::uint64_t s = 0; s < A.space.M; ++s) {
        int v = 1;
        Mask m = A.space.subsets[s];
        while (m) {
            v *= x[std::countr_zero(m)];
            m &= m - 1;
        }
        sign[s] = v;
    }
    auto lift = [&](std::uint64_t idx) {
        int v = 1;
        for (int b = 0; b < A.blocks; ++b) {
            v *= sign[idx % A.space.M];
            idx /= A.space.M;
        }
        return v;
    };
    Rational total = 0;
    for (const auto& lab : A.labels) {
        long s = 0;
        for (auto [row, col] : lab.entries) s += lift(row) * lift(col);
        total += lab.coef * s;
    }
    return total;
}

PruneResult prune_rows(const LabeledMatrix& A, const Rational& gamma, const Rational& delta_n, PruneMode mode, int r) {
    PruneResult out;
    auto& st = out.stats;
    const Rational N = Rational(Integer(std::to_string(A.N)));
    const bool hyper = mode == PruneMode::HyperTail;
    if (hyper && delta_n <= 0) throw std::invalid_argument("delta n must be positive");
    st.threshold = hyper ? Rational(gamma / (N * delta_n)) : Rational(gamma / N);
    st.first_target = hyper ? Rational(1 / (N * delta_n)) : Rational(4 / N);
    const Rational cond_target = hyper ? Rational(4 / (N * delta_n)) : Rational(16 / N);

    std::vector<std::unordered_map<std::uint64_t, Rational>> rdeg(A.owners), cdeg(A.owners);
    std::vector<Rational> owner_mass(A.owners);
    for (const auto& lab : A.labels) {
        Rational a = abs(lab.coef);
        owner_mass[lab.owner] += a * lab.D;
        for (auto [row, col] : lab.entries) {
            rdeg[lab.owner][row] += a;
            cdeg[lab.owner][col] += a;
        }
    }
    st.first_moment = 0;
    for (const auto& m : owner_mass) st.first_moment = std::max(st.first_moment, Rational(m / N));

    std::vector<std::unordered_set<std::uint64_t>> bad_r(A.owners), bad_c(A.owners);
    for (int o = 0; o < A.owners; ++o) {
        for (const auto& [row, d] : rdeg[o])
            if (d >= st.threshold) bad_r[o].insert(row);
        for (const auto& [col, d] : cdeg[o])
            if (d >= st.threshold) bad_c[o].insert(col);
        st.rows_dropped += bad_r[o].size();
        st.cols_dropped += bad_c[o].size();
    }

    out.B.space = A.space;
    out.B.blocks = A.blocks;
    out.B.N = A.N;
    out.B.owners = A.owners;
    st.labels = A.labels.size();
    double ratio_sum = 0;
    for (const auto& lab : A.labels) {
        // conditional mean degree over the label's rows (each row appears once per label)
        Rational s = 0;
        for (auto [row, col] : lab.entries) s += rdeg[lab.owner][row];
        double ratio = lab.entries.empty() ? 0.0 : Rational(s / Rational(lab.entries.size()) / cond_target).get_d();
        st.max_cond_ratio = std::max(st.max_cond_ratio, ratio);
        ratio_sum += ratio;

        const std::uint64_t keep = (lab.D + 1) / 2;
        KLabel kept{lab.owner, 0, lab.D, {}};
        std::vector<std::pair<std::uint64_t, std::uint64_t>> dropped;
        for (const auto& e : lab.entries) {
            bool ok = !bad_r[lab.owner].count(e.first) && !bad_c[lab.owner].count(e.second);
            if (ok && kept.entries.size() < keep) kept.entries.push_back(e);
            else if (!ok) dropped.push_back(e);
        }
        std::uint64_t survivors = 0;
        for (const auto& e : lab.entries)
            survivors += !bad_r[lab.owner].count(e.first) && !bad_c[lab.owner].count(e.second);
        if (lab.D > 0) st.min_retention = std::min(st.min_retention, static_cast<double>(survivors) / lab.D);
        if (kept.entries.size() < keep) {
            // too few survivors: refill from pruned entries so the quadratic form stays exact
            ++st.labels_short;
            for (std::size_t d = 0; kept.entries.size() < keep && d < dropped.size(); ++d) kept.entries.push_back(dropped[d]);
        }
        kept.coef = keep ? lab.coef * Rational(static_cast<long>(lab.D)) / Rational(static_cast<long>(2 * keep)) : Rational(0);
        out.B.labels.push_back(std::move(kept));
    }
    if (!A.labels.empty()) st.mean_cond_ratio = ratio_sum / A.labels.size();
    const double lr = static_cast<double>(A.space.ell) * std::max(1, r);
    st.calibrated_c = std::max(0.0, st.max_cond_ratio - 1) * A.space.n / lr;
    return out;
}

SparseMat assemble(const LabeledMatrix& A, const std::vector<int>* owner_filter) {
    std::vector<std::uint64_t> rows, cols;
    for (const auto& lab : A.labels)
        for (auto [r, c] : lab.entries) {
            rows.push_back(r);
            cols.push_back(c);
        }
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    auto idx = [](const std::vector<std::uint64_t>& v, std::uint64_t x) {
        return static_cast<int>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
    };
    std::vector<Eigen::Triplet<double>> trips;
    for (const auto& lab : A.labels) {
        if (owner_filter && std::find(owner_filter->begin(), owner_filter->end(), lab.owner) == owner_filter->end())
            continue;
        double c = lab.coef.get_d();
        for (auto [r, col] : lab.entries) trips.emplace_back(idx(rows, r), idx(cols, col), c);
    }
    SparseMat B(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    B.setFromTriplets(trips.begin(), trips.end());
    return B;
}

NormEstimate spectral_norm_dense(const Eigen::MatrixXd& B) {
    NormEstimate e;
    e.exact = true;
    if (B.size() == 0) return e;
    Eigen::BDCSVD<Eigen::MatrixXd> svd(B);
    double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    e.value = e.lower = s;
    e.upper = s * (1 + 1e-9);
    return e;
}

namespace {

double schur_bound(const SparseMat& B) {
    Eigen::VectorXd rs = Eigen::VectorXd::Zero(B.rows()), cs = Eigen::VectorXd::Zero(B.cols());
    for (int k = 0; k < B.outerSize(); ++k)
        for (SparseMat::InnerIterator it(B, k); it; ++it) {
            rs(it.row()) += std::abs(it.value());
            cs(it.col()) += std::abs(it.value());
        }
    if (B.rows() == 0 || B.cols() == 0) return 0;
    return std::sqrt(rs.maxCoeff() * cs.maxCoeff()) * (1 + 1e-12);
}

}  // namespace

NormEstimate spectral_norm_power(const SparseMat& B, const NormOptions& opt) {
    NormEstimate e;
    e.exact = false;
    e.upper = schur_bound(B);
    if (B.nonZeros() == 0) return e;
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> g;
    Eigen::VectorXd v(B.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = g(rng);
    v.normalize();
    e.converged = false;
    double theta = 0;
    for (int it = 1; it <= opt.max_iter; ++it) {
        Eigen::VectorXd w = B.transpose() * (B * v);
        theta = v.dot(w);
        e.residual = (w - theta * v).norm();
        e.iterations = it;
        double wn = w.norm();
        if (wn == 0) break;
        if (e.residual <= opt.tol * std::max(theta, 1e-300)) {
            e.converged = true;
            break;
        }
        v = w / wn;
    }
    e.value = e.lower = std::sqrt(std::max(theta, 0.0));
    return e;
}

NormEstimate spectral_norm(const SparseMat& B, const NormOptions& opt) {
    if (B.rows() <= opt.dense_limit && B.cols() <= opt.dense_limit) {
        auto e = spectral_norm_dense(Eigen::MatrixXd(B));
        e.upper = std::min(e.upper, std::max(schur_bound(B), e.upper));
        return e;
    }
    return spectral_norm_power(B, opt);
}

bool Certificate::sound() const {
    if (!val_brute) return true;
    return val_brute->get_d() <= val_bound * (1 + 1e-9) + 1e-12;
}

namespace {

double khintchine_ratio_for(const LabeledMatrix& B, double norm, std::uint64_t N, int dense_limit) {
    // sigma^2 from the per-owner pieces in the compressed coordinates
    SparseMat all = assemble(B);
    if (all.rows() > dense_limit || all.cols() > dense_limit || all.nonZeros() == 0) return 0;
    Eigen::MatrixXd sum_l = Eigen::MatrixXd::Zero(all.rows(), all.rows());
    Eigen::MatrixXd sum_r = Eigen::MatrixXd::Zero(all.cols(), all.cols());
    // same compression for every owner: rebuild with a filter but shared index sets
    for (int o = 0; o < B.owners; ++o) {
        LabeledMatrix part = B;
        for (auto& lab : part.labels)
            if (lab.owner != o) lab.coef = 0;
        Eigen::MatrixXd X(assemble(part));
        sum_l += X * X.transpose();
        sum_r += X.transpose() * X;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> el(sum_l, Eigen::EigenvaluesOnly), er(sum_r, Eigen::EigenvaluesOnly);
    double sigma2 = std::max(el.eigenvalues().maxCoeff(), er.eigenvalues().maxCoeff());
    if (sigma2 <= 0) return 0;
    return norm / std::sqrt(2 * sigma2 * std::log(2.0 * static_cast<double>(N)));
}

Rational delta_or_zero(const HypergraphCollection& col) {
    for (int u = 0; u < col.n; ++u)
        if (!col.H[u].empty() || !col.G[u].empty()) return collection_delta(col);
    return 0;
}

std::optional<Rational> brute_if_small(const ChainXorInstance& inst) {
    if (inst.nvars > 20) return std::nullopt;
    return val_brute(inst).val;
}

}  // namespace

Certificate certify_graph_tail(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b, int t,
                               const RefuteParams& p) {
    Certificate c;
    c.kind = "graph-tail";
    c.k = static_cast<int>(heads.size());
    c.r = p.r;
    c.t = t;
    c.ell = p.ell;
    c.nvars = col.n;
    c.d = p.d;
    c.delta = delta_or_zero(col);
    c.gamma = p.gamma;
    auto phi = build_phi(col, heads, b, t, p.budget);
    auto A = build_graph_tail_matrix(phi, p.ell, p.budget);
    c.N = A.N;
    auto pr = prune_rows(A, p.gamma, c.delta * col.n, PruneMode::GraphTail, p.r);
    c.pruned_rows = pr.stats.rows_dropped;
    c.labels = pr.stats.labels;
    c.labels_short = pr.stats.labels_short;
    c.retention = pr.stats.min_retention;
    c.max_cond_ratio = pr.stats.max_cond_ratio;
    c.calibrated_c = pr.stats.calibrated_c;
    auto norm = spectral_norm(assemble(pr.B), p.norm);
    c.norm_upper = norm.upper;
    c.norm_estimate = norm.value;
    c.norm_exact = norm.exact;
    c.val_bound = 2.0 * static_cast<double>(A.N) * norm.upper;
    c.val_brute = brute_if_small(phi);
    c.khintchine_ratio = khintchine_ratio_for(pr.B, norm.value, A.N, p.norm.dense_limit);
    return c;
}

Certificate certify_hyper_tail(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b,
                               const RefuteParams& p) {
    Certificate c;
    c.kind = "hyper-tail";
    c.k = static_cast<int>(heads.size());
    c.r = p.r;
    c.t = p.r + 1;
    c.ell = p.ell;
    c.nvars = col.n;
    c.d = p.d;
    c.delta = collection_delta(col);
    c.gamma = p.gamma;
    auto part = greedy_partition(col, p.r, p.d, c.delta, p.budget);
    auto bp = bipartite_psi(col, part, heads, b, p.budget);
    c.group_weight = group_weight(bp);
    c.diagonal = diagonal_bound(bp);
    auto matchings = round_robin_directed_matchings(c.k);
    c.matchings = matchings.size();
    double cross = 0;
    bool all_exact = true;
    for (const auto& M : matchings) {
        auto A = build_hyper_tail_matrix(bp, M, p.ell, p.budget);
        c.N = A.N;
        auto pr = prune_rows(A, p.gamma, c.delta * col.n, PruneMode::HyperTail, p.r);
        c.pruned_rows += pr.stats.rows_dropped;
        c.labels += pr.stats.labels;
        c.labels_short += pr.stats.labels_short;
        c.retention = std::min(c.retention, pr.stats.min_retention);
        c.max_cond_ratio = std::max(c.max_cond_ratio, pr.stats.max_cond_ratio);
        c.calibrated_c = std::max(c.calibrated_c, pr.stats.calibrated_c);
        auto norm = spectral_norm(assemble(pr.B), p.norm);
        all_exact = all_exact && norm.exact;
        c.norm_upper = std::max(c.norm_upper, norm.upper);
        c.norm_estimate = std::max(c.norm_estimate, norm.value);
        cross += 2.0 * static_cast<double>(A.N) * norm.upper;
    }
    c.norm_exact = all_exact;
    double inner = c.diagonal.get_d() + cross;
    c.val_bound = std::sqrt(c.group_weight.get_d() * inner) * (1 + 1e-12);
    c.val_brute = brute_if_small(build_psi(col, heads, b, p.r, p.budget));
    return c;
}

std::string certificate_json(const Certificate& c) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json params;
    params["kind"] = c.kind;
    params["k"] = c.k;
    params["r"] = c.r;
    params["t"] = c.t;
    params["l"] = c.ell;
    params["n"] = c.nvars;
    params["d"] = rat_str(c.d);
    params["delta"] = rat_str(c.delta);
    params["gamma"] = rat_str(c.gamma);
    params["N"] = c.N;
    j["params"] = params;
    j["norm_upper"] = c.norm_upper;
    j["norm_estimate"] = c.norm_estimate;
    j["norm_exact"] = c.norm_exact;
    j["val_bound"] = c.val_bound;
    if (c.val_brute) j["val_brute"] = c.val_brute->get_d();
    else j["val_brute"] = nullptr;
    j["pruned_rows"] = c.pruned_rows;
    j["labels"] = c.labels;
    j["labels_short"] = c.labels_short;
    j["retention"] = c.retention;
    j["khintchine_ratio"] = c.khintchine_ratio;
    j["max_cond_ratio"] = c.max_cond_ratio;
    j["calibrated_c"] = c.calibrated_c;
    if (c.kind == "hyper-tail") {
        j["matchings"] = c.matchings;
        j["group_weight"] = rat_str(c.group_weight);
        j["diagonal"] = rat_str(c.diagonal);
    }
    j["sound"] = c.sound();
    return j.dump();
}

KhintchineResult khintchine_check(const std::string& family, const std::vector<Eigen::MatrixXd>& X, int trials,
                                  std::uint64_t seed) {
    if (X.empty()) throw std::invalid_argument("empty matrix family");
    KhintchineResult res;
    res.family = family;
    res.d1 = static_cast<int>(X[0].rows());
    res.d2 = static_cast<int>(X[0].cols());
    res.m = static_cast<int>(X.size());
    res.trials = trials;
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(res.d1, res.d1), R = Eigen::MatrixXd::Zero(res.d2, res.d2);
    for (const auto& x : X) {
        if (x.rows() != res.d1 || x.cols() != res.d2) throw std::invalid_argument("matrix family shapes differ");
        L += x * x.transpose();
        R += x.transpose() * x;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> el(L, Eigen::EigenvaluesOnly), er(R, Eigen::EigenvaluesOnly);
    res.sigma2 = std::max(el.eigenvalues().maxCoeff(), er.eigenvalues().maxCoeff());
    res.bound = std::sqrt(2 * res.sigma2 * std::log(static_cast<double>(res.d1 + res.d2)));
    std::mt19937_64 rng(seed);
    double total = 0;
    for (int t = 0; t < trials; ++t) {
        Eigen::MatrixXd S = Eigen::MatrixXd::Zero(res.d1, res.d2);
        for (const auto& x : X) S += (rng() & 1) ? x : Eigen::MatrixXd(-x);
        total += spectral_norm_dense(S).value;
    }
    res.mean_norm = total / trials;
    res.ratio = res.bound > 0 ? res.mean_norm / res.bound : 0;
    return res;
}

std::vector<std::pair<std::string, std::vector<Eigen::MatrixXd>>> khintchine_fixtures(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::pair<std::string, std::vector<Eigen::MatrixXd>>> out;
    out.push_back({"scalar", {Eigen::MatrixXd::Ones(1, 1)}});
    out.push_back({"identity", std::vector<Eigen::MatrixXd>(6, Eigen::MatrixXd::Identity(8, 8))});
    {
        std::vector<Eigen::MatrixXd> perms;
        for (int m = 0; m < 8; ++m) {
            std::vector<int> p(16);
            for (int i = 0; i < 16; ++i) p[i] = i;
            std::shuffle(p.begin(), p.end(), rng);
            Eigen::MatrixXd P = Eigen::MatrixXd::Zero(16, 16);
            for (int i = 0; i < 16; ++i) P(i, p[i]) = 1;
            perms.push_back(P);
        }
        out.push_back({"permutations", perms});
    }
    {
        std::vector<Eigen::MatrixXd> dense;
        for (int m = 0; m < 5; ++m) {
            Eigen::MatrixXd D(12, 12);
            for (int i = 0; i < 12; ++i)
                for (int j = 0; j < 12; ++j) D(i, j) = ((rng() & 1) ? 1.0 : -1.0) / std::sqrt(12.0);
            dense.push_back(D);
        }
        out.push_back({"dense-signs", dense});
    }
    {
        std::vector<Eigen::MatrixXd> rect;
        for (int m = 0; m < 6; ++m) {
            Eigen::MatrixXd Rm = Eigen::MatrixXd::Zero(10, 20);
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 20; ++j)
                    if (rng() % 5 == 0) Rm(i, j) = (rng() & 1) ? 1.0 : -1.0;
            rect.push_back(Rm);
        }
        out.push_back({"rectangular", rect});
    }
    {
        // per-message pieces of a pruned graph-tail Kikuchi matrix
        std::mt19937_64 crng(seed ^ 0x5eed);
        auto col = random_collection({8, 3, 3, true}, crng);
        auto phi = build_phi(col, {0, 1, 2, 3}, {1, 1, 1, 1}, 1);
        auto A = build_graph_tail_matrix(phi, 2);
        auto B = prune_rows(A, 64, collection_delta(col) * col.n, PruneMode::GraphTail, 1).B;
        std::vector<Eigen::MatrixXd> pieces;
        for (int o = 0; o < B.owners; ++o) {
            LabeledMatrix part = B;
            for (auto& lab : part.labels)
                if (lab.owner != o) lab.coef = 0;
            pieces.emplace_back(assemble(part));
        }
        out.push_back({"kikuchi-graph-tail", pieces});
    }
    return out;
}

}  // namespace lcc
