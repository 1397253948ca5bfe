#pragma once

#include "lcc/common.hpp"
#include "lcc/design_codes.hpp"
#include "lcc/linear_chains.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lcc {

// Vertex sets are 64-bit masks, so everything here requires n <= 64.
using Mask = std::uint64_t;

struct KikuchiParams {
    int n = 0, r = 0, ell = 0, head = 0;
    Integer N() const { return binom(n, ell); }
};

struct ChainHalves {
    Mask left = 0, right = 0;
    int tail = 0;
};
std::vector<ChainHalves> chain_halves(const std::vector<Chain>& chains);

struct KikuchiEdge {
    Mask S;
    int w;
    Mask T;
    std::uint32_t label;  // index into KikuchiGraph::chains
};

struct KikuchiGraph {
    KikuchiParams params;
    std::vector<Chain> chains;
    std::vector<KikuchiEdge> edges;
};

struct GraphBuildOptions {
    bool distinct = true;
    std::uint64_t max_edges = 20'000'000;
};

KikuchiGraph build_graph(const MatchingFamily& m, const KikuchiParams& p, const GraphBuildOptions& opt = {});
// Edges per chain: C(n - |C_L u C_R|, ell - |C_L|) when |C_L| = |C_R| as sets, else 0.
std::uint64_t edges_for_chain(const Chain& c, int n, int ell);
// Number of (edge, dual basis vector) pairs where x_w + sum_S + sum_T != x_head.
std::size_t count_edge_decode_failures(const DesignLcc& lcc, const KikuchiGraph& g);

enum class MomentMode { Exact, MonteCarlo };

struct MomentReport {
    KikuchiParams params;
    MomentMode mode = MomentMode::Exact;
    std::uint64_t chains = 0;
    std::uint64_t samples = 0;
    Rational dL, dR;              // exact first moments
    double dL2 = 0, dR2 = 0;      // second moments (exact values converted when mode is Exact)
    Rational dL2_exact, dR2_exact;
    Rational formulaL, formulaR;
    Rational eta;                 // n / C(ell, r)
    double ratioL = 0, ratioR = 0;
    double stderrL = 0, stderrR = 0;
    double cL = 0, cR = 0;        // calibrated constants for the windows
    // first-moment window: (1 - c r^2/n) upper <= d_R <= upper
    Rational dR_upper, dR_lower_count;
    double c_first = 0;
    bool first_moment_ok = false;
};

// Hypergeometric mixtures in the second-moment estimates.
Rational second_moment_formula_right(int n, int r, int ell, const Rational& dR);
Rational second_moment_formula_left(int n, int r, int ell, const Rational& dL);

MomentReport exact_moments(const std::vector<Chain>& chains, const KikuchiParams& p);
MomentReport monte_carlo_moments(const std::vector<Chain>& chains, const KikuchiParams& p, std::uint64_t seed,
                                 std::uint64_t samples);
// Direct scan of every T and every (S,w); only for small n.
std::pair<Rational, Rational> brute_force_second_moments(const std::vector<Chain>& chains, const KikuchiParams& p);

std::string moments_csv_header();
std::string moments_csv_row(const MomentReport& m);

struct BinestSample {
    long n, r, t, ell;
    Rational lhs, rhs;
};
BinestSample binest_terms(long n, long r, long t, long ell);

struct BinestSummary {
    std::size_t samples = 0;
    std::size_t violations = 0;  // RHS = 0 < LHS, or ratio above the calibrated window
    double max_c = 0;            // max (LHS/RHS - 1) n / ell^2
};
BinestSummary binest_sweep(std::size_t samples, std::uint64_t seed, double c_cap);

struct PruneStats {
    std::size_t left_vertices = 0, right_vertices = 0;  // with at least one edge
    std::size_t left_pruned = 0, right_pruned = 0;
    std::size_t edges_before = 0, edges_after = 0, edges_after_split = 0;
    std::size_t max_right_deg_before = 0, max_right_deg_after_split = 0;
    std::size_t matching_size = 0;
    bool greedy = false;
    double matching_ratio = 0;   // |M| / surviving left vertices
    double retained_fraction = 0;
};

struct MatchedEdge {
    Mask S;
    int w;
    Mask T;
    int copy;
    std::uint32_t label;
};

struct PruneMatchResult {
    std::vector<KikuchiEdge> pruned;  // post-pruning edges
    std::vector<MatchedEdge> matching;
    PruneStats stats;
};

double default_slack(int n, int r, int ell);
PruneMatchResult prune_and_match(const KikuchiGraph& g, double slack, std::size_t exact_matching_edge_budget = 2'000'000);

// Maximum matching on a bipartite graph given as (left, right) pairs; returns chosen edge indices.
std::vector<std::size_t> max_bipartite_matching(std::size_t n_left, std::size_t n_right,
                                                const std::vector<std::pair<std::size_t, std::size_t>>& edges);
std::vector<std::size_t> greedy_matching(std::size_t n_left, std::size_t n_right,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& edges);

// Colex rank of an ell-subset mask.
std::uint64_t subset_rank(Mask s);

struct TwoLdc {
    std::size_t block_length = 0;
    std::size_t k = 0;
    std::vector<BitVec> codewords;  // a spanning set of the code
    std::vector<BitVec> messages;   // message of each spanning codeword (length k)
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> matchings;  // per message index
};

struct TwoLdcCheck {
    bool matchings_valid = true;
    std::size_t decode_failures = 0;
    std::optional<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> first_failure;
    double delta_prime = 0;
    double lhs = 0;  // 2 δ' k
    double rhs = 0;  // log2 block length
    bool bound_holds = false;
    bool pass() const { return matchings_valid && decode_failures == 0 && bound_holds; }
};

TwoLdcCheck check_2ldc(const TwoLdc& code);
TwoLdc hadamard_2ldc(std::size_t k);

struct DesignLdcResult {
    TwoLdc code;
    std::vector<std::size_t> systematic;  // head vertex for each message index
    std::vector<PruneStats> per_head;
};
DesignLdcResult assemble_design_2ldc(const DesignLcc& lcc, const MatchingFamily& m, int r, int ell, double slack);

// r = ceil(log2(n)/2 + gamma log2 log2 n), ell = 2r - 1
std::pair<int, int> schedule_params(double n, double gamma);

}  // namespace lcc
