#pragma once

#include "lcc/chain_xor.hpp"
#include "lcc/design_kikuchi.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lcc {

// l-subsets of [n] in colex order; a matrix index is a base-M number whose
// digit b is the rank of block b.
struct SubsetSpace {
    int n = 0, ell = 0;
    std::uint64_t M = 0;
    std::vector<Mask> subsets;
    SubsetSpace() = default;
    SubsetSpace(int n, int ell);
    std::uint64_t rank(Mask s) const { return subset_rank(s); }
};

// One chain label: a 0/1 pattern scaled by coef.
struct KLabel {
    int owner = 0;       // message index (graph tail) or pair index in M (hyper tail)
    Rational coef;       // b_i wt / D  (or b_i b_j wt wt' / (wt(Q) D))
    std::uint64_t D = 0; // nonzero count before pruning
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;
};

struct LabeledMatrix {
    SubsetSpace space;
    int blocks = 0;
    std::uint64_t N = 0;  // M^blocks
    int owners = 0;
    std::vector<KLabel> labels;
    std::uint64_t nnz() const;
};

Integer graph_tail_D(int n, int ell, int t);         // C(n-2, l-1)^t
Integer hyper_tail_D(int n, int ell, int r, int t);  // C(n-2, l-1)^(2r+2-t) C(n, l)^t

LabeledMatrix build_graph_tail_matrix(const ChainXorInstance& phi, int ell, std::uint64_t budget = 20'000'000);
LabeledMatrix build_hyper_tail_matrix(const BipartitePsi& bp, const DirectedMatching& M, int ell,
                                      std::uint64_t budget = 20'000'000);

// x'^T A x' with x'_S = prod over blocks of x_{S_b}, summed entry by entry.
Rational quadratic_form(const LabeledMatrix& A, const SignVec& x);

enum class PruneMode { GraphTail, HyperTail };

struct LabelPruneStats {
    Rational threshold;               // Gamma / N  or  Gamma / (N delta n)
    std::size_t rows_dropped = 0, cols_dropped = 0;
    std::size_t labels = 0, labels_short = 0;  // short: fewer than ceil(D/2) survivors
    double min_retention = 1;         // survivors / D, minimum over labels
    Rational first_moment, first_target;        // E_S[deg(S)] vs 4/N or 1/(N delta n)
    double max_cond_ratio = 0, mean_cond_ratio = 0;  // conditional mean degree / (16/N or 4/(N delta n))
    double calibrated_c = 0;          // smallest c with max ratio <= 1 + c l r / n
};

struct PruneResult {
    LabeledMatrix B;  // exactly ceil(D/2) entries per label, rescaled so x'^T B x' = x'^T A x' / 2
    LabelPruneStats stats;
};

// delta_n is the collection's delta times n (unused in graph-tail mode).
PruneResult prune_rows(const LabeledMatrix& A, const Rational& gamma, const Rational& delta_n, PruneMode mode, int r);

using SparseMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;
// Sum of the labels with empty rows and columns dropped (the norm is unchanged).
SparseMat assemble(const LabeledMatrix& A, const std::vector<int>* owner_filter = nullptr);

struct NormEstimate {
    double value = 0;     // best estimate
    double lower = 0;     // Rayleigh quotient bound, always valid
    double upper = 0;     // valid upper bound used by certificates
    double residual = 0;  // power iteration residual ||M v - theta v||
    int iterations = 0;
    bool exact = false;   // dense decomposition
    bool converged = true;
};

struct NormOptions {
    int dense_limit = 1500;  // dense SVD when both compressed dimensions are at most this
    std::uint64_t seed = 1;
    double tol = 1e-9;
    int max_iter = 20000;
};

NormEstimate spectral_norm_dense(const Eigen::MatrixXd& B);
NormEstimate spectral_norm_power(const SparseMat& B, const NormOptions& opt = {});
// Exact when small; otherwise the upper bound is sqrt(max row l1 * max column l1).
NormEstimate spectral_norm(const SparseMat& B, const NormOptions& opt = {});

struct RefuteParams {
    int ell = 1;
    int r = 1;
    Rational gamma = 64;
    Rational d = 2;
    std::uint64_t seed = 1;
    std::uint64_t budget = 20'000'000;
    NormOptions norm;
};

struct Certificate {
    std::string kind;  // "graph-tail" or "hyper-tail"
    int k = 0, r = 0, t = 0, ell = 0, nvars = 0;
    Rational d, delta, gamma;
    std::uint64_t N = 0;
    std::size_t pruned_rows = 0, labels = 0, labels_short = 0;
    double retention = 1;
    double norm_upper = 0, norm_estimate = 0;
    bool norm_exact = true;
    double val_bound = 0;
    std::optional<Rational> val_brute;
    double khintchine_ratio = 0;  // ||B|| / sqrt(2 sigma^2 ln(d1 + d2)) for the drawn signs
    double max_cond_ratio = 0, calibrated_c = 0;
    std::size_t matchings = 0;
    Rational group_weight, diagonal;  // hyper tail only

    bool sound() const;  // bound >= brute value whenever the latter is known
};

Certificate certify_graph_tail(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b, int t,
                               const RefuteParams& p);
Certificate certify_hyper_tail(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b,
                               const RefuteParams& p);
std::string certificate_json(const Certificate& c);

// Rectangular matrix Khintchine: E||sum b_i X_i|| <= sqrt(2 sigma^2 ln(d1 + d2)).
struct KhintchineResult {
    std::string family;
    int d1 = 0, d2 = 0, m = 0, trials = 0;
    double sigma2 = 0, bound = 0, mean_norm = 0, ratio = 0;
    bool pass() const { return mean_norm <= bound; }
};
KhintchineResult khintchine_check(const std::string& family, const std::vector<Eigen::MatrixXd>& X, int trials,
                                  std::uint64_t seed);
std::vector<std::pair<std::string, std::vector<Eigen::MatrixXd>>> khintchine_fixtures(std::uint64_t seed);

}  // namespace lcc
