#pragma once

#include "lcc/common.hpp"
#include "lcc/decoder_model.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace lcc {

enum class TailKind { Hyper, Graph };

// Hypergraph-tailed t-chains have 3t+1 entries (u0, v1, v2, u1, ..., u_t);
// graph-tailed ones have 3t and stop after the last pair.
struct WeightedChain {
    std::vector<int> seq;
    Rational wt;
    TailKind kind = TailKind::Hyper;

    int links() const { return kind == TailKind::Hyper ? static_cast<int>(seq.size() - 1) / 3 : static_cast<int>(seq.size()) / 3; }
    int head() const { return seq.front(); }
    int tail() const { return seq.back(); }  // only meaningful for Hyper
    int left(int h) const { return seq[3 * h + 1]; }
    int right(int h) const { return seq[3 * h + 2]; }
    // variables of g_C, with multiplicity
    std::vector<int> monomial() const;
};

void for_each_weighted_chain(const HypergraphCollection& col, int u, int t, TailKind kind,
                             const std::function<void(const WeightedChain&)>& visit,
                             std::uint64_t budget = 20'000'000);
std::vector<WeightedChain> chain_hypergraph(const HypergraphCollection& col, int u, int t, TailKind kind,
                                            std::uint64_t budget = 20'000'000);

struct Conservation {
    int u = 0, t = 0;
    Rational total_H, total_G;
    bool pass() const { return total_H <= 1 && total_G <= 4; }
};
// Computed by pushing mass along tails, so it is cheap for any t.
Conservation weight_conservation(const HypergraphCollection& col, int u, int t);

// ---- chain XOR instances ----

enum class InstanceKind { Phi, Psi };

struct XorTerm {
    int i = 0;                 // message index; head is heads[i]
    std::vector<int> seq;      // the chain
    Rational coef;             // b_i * wt
    std::vector<int> vars;     // variables with odd multiplicity in g_C, sorted
};

struct ChainXorInstance {
    InstanceKind kind = InstanceKind::Phi;
    int t = 0;   // chain length for Phi; r+1 for Psi
    int r = 0;
    int nvars = 0;
    std::vector<int> heads;
    SignVec b;
    std::vector<XorTerm> terms;

    int k() const { return static_cast<int>(heads.size()); }
    Rational abs_mass() const;
};

std::vector<int> odd_variables(std::vector<int> v);

ChainXorInstance build_phi(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b, int t,
                           std::uint64_t budget = 20'000'000);
ChainXorInstance build_psi(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b, int r,
                           std::uint64_t budget = 20'000'000);

Rational evaluate_instance(const ChainXorInstance& inst, const SignVec& x);

// Exhaustive maximum over all x in {+-1}^nvars (nvars <= 24). Coefficients are grouped
// by monomial and a Walsh-Hadamard transform gives every value at once.
struct BruteVal {
    Rational val;
    SignVec argmax;
};
constexpr int kMaxBruteVars = 24;
BruteVal val_brute(const std::vector<std::pair<std::vector<int>, Rational>>& poly, int nvars);
BruteVal val_brute(const ChainXorInstance& inst);

// Psi_b(x) and Phi_b^(t)(x) computed by propagation along tails, without listing chains.
Rational psi_value(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b, int r, const SignVec& x);
Rational phi_value(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b, int t, const SignVec& x);
// Psi_b + sum_{t=1}^{r+1} Phi_b^(t)
Rational chain_sum_value(const HypergraphCollection& col, const std::vector<int>& heads, const SignVec& b, int r,
                         const SignVec& x);

// r = min(r0, floor(log2 n)) with r0 + 1 = floor((1 - eta) / (2 eps)), so that
// 1 - 2(r+1) eps >= eta. eps = 0 gives floor(log2 n). Never negative.
int clamp_r(const Rational& eps, const Rational& eta, int n);

// ---- greedy partition of the t-chains ----

// A complete, contiguous Q for a t-chain: Q[h] lies in link h (h < t), Q[t] is the tail.
// For longer chains, star entries are -1 and Q is aligned with the end of the chain.
constexpr int kStar = -1;
bool contains_pattern(const std::vector<int>& Q, const std::vector<int>& chain_seq);

struct PartitionPart {
    std::vector<int> Q;
    std::vector<std::size_t> members;  // indices into LevelPartition::chains
    Rational wt;
};

struct LevelPartition {
    int level = 0;
    Rational threshold;
    std::vector<WeightedChain> chains;  // every t-chain, all heads
    std::vector<PartitionPart> parts;   // in the order the greedy picked them
    std::vector<std::size_t> residual;
    std::map<std::vector<int>, std::size_t> part_of_chain;  // chain seq -> part index
};

struct Partition {
    int n = 0, r = 0;
    Rational d, delta;
    std::vector<LevelPartition> levels;  // levels[t] for t = 1..r; levels[0] unused

    Rational level_mass(int t) const;
};

// n d^t (delta n)^(-t-1)
Rational partition_threshold(int n, const Rational& d, const Rational& delta, int t);
// Heavy Q's are taken in lexicographic order, repeatedly, until none remains.
LevelPartition greedy_level(const HypergraphCollection& col, int t, const Rational& threshold,
                            std::uint64_t budget = 5'000'000);
Partition greedy_partition(const HypergraphCollection& col, int r, const Rational& d, const Rational& delta,
                           std::uint64_t budget = 5'000'000);
// The largest Q of a residual-level scan; used to confirm maximality.
Rational max_residual_pattern_mass(const LevelPartition& lp);

// ---- Psi(x, y) ----

struct PsiTerm {
    std::vector<int> seq;    // (r+1)-chain
    Rational wt;
    std::vector<int> vars;   // monomial with Q modded out (odd multiplicity)
};

struct PsiGroup {
    int level = 0;
    std::vector<int> Q;      // length level+1, last entry is the tail
    Rational wtQ;            // 1 at level 0
    std::vector<std::vector<PsiTerm>> by_head;  // indexed by message index i
};

struct BipartitePsi {
    int n = 0, r = 0;
    std::vector<int> heads;
    SignVec b;
    std::vector<PsiGroup> groups;

    // (level, part index) -> index into groups; level 0 is keyed by the tail
    std::map<std::pair<int, int>, std::size_t> group_index;
    std::size_t term_count() const;
};

// The Q-group of an r-chain: the longest heavy suffix, else level 0 keyed by the tail.
std::pair<int, int> classify_suffix(const Partition& p, const std::vector<int>& rchain);

BipartitePsi bipartite_psi(const HypergraphCollection& col, const Partition& p, const std::vector<int>& heads,
                           const SignVec& b, std::uint64_t budget = 5'000'000);

Rational psi_iq(const PsiGroup& g, int i, const SignVec& x);
Rational psi_iq_mass(const PsiGroup& g, int i);
// y_Q = prod of x over Q
SignVec y_of_x(const BipartitePsi& bp, const SignVec& x);
Rational psi_xy(const BipartitePsi& bp, const SignVec& x, const SignVec& y);

using DirectedMatching = std::vector<std::pair<int, int>>;
// Splits all ordered pairs (i, j), i != j, into directed matchings:
// 2(k-1) of them for even k, 2k for odd k.
std::vector<DirectedMatching> round_robin_directed_matchings(int k);

// f_M(x) = sum_{(i,j) in M} b_i b_j sum_Q Psi_{i,Q} Psi_{j,Q} / wt(Q)
Rational cross_term(const BipartitePsi& bp, const DirectedMatching& M, const SignVec& x);
// sum_Q wt(Q) over the groups in use
Rational group_weight(const BipartitePsi& bp);
// sum_Q (1/wt(Q)) sum_i mass(i,Q)^2, an upper bound on the diagonal part at every x
Rational diagonal_bound(const BipartitePsi& bp);

// Largest ratio mass(i,Q) * delta n / wt(Q); the smoothness lemma says <= 1.
Rational chain_smoothness_ratio(const BipartitePsi& bp, const Rational& delta);

// ---- files ----
std::string instance_to_jsonl(const ChainXorInstance& inst);
ChainXorInstance instance_from_jsonl(const std::string& text, int nvars);

// Random delta-smooth collection for tests and the refuter's soundness sweep.
struct RandomCollectionSpec {
    int n = 8;
    int triples = 3;  // per index
    int edges = 2;    // per index
    bool full_h_mass = true;
};
HypergraphCollection random_collection(const RandomCollectionSpec& spec, std::mt19937_64& rng);
// 1 / (n * max incident weight)
Rational collection_delta(const HypergraphCollection& col);

}  // namespace lcc
