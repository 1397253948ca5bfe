#pragma once

#include "lcc/common.hpp"
#include "lcc/design_codes.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace lcc {

// (u0, v1, v2, u1, v3, v4, u2, ...): link h is (seq[3h+1], seq[3h+2], seq[3h+3])
// resolving pivot seq[3h]. Left half = first entry of every link, right half = second.
struct Chain {
    std::vector<int> seq;

    int r() const { return static_cast<int>(seq.size() - 1) / 3; }
    int head() const { return seq.front(); }
    int tail() const { return seq.back(); }
    int pivot(int h) const { return seq[3 * h]; }
    int left(int h) const { return seq[3 * h + 1]; }
    int right(int h) const { return seq[3 * h + 2]; }
    std::vector<int> left_half() const;
    std::vector<int> right_half() const;
    std::string to_line() const;
    bool operator==(const Chain& o) const { return seq == o.seq; }
};

struct OrderedLink {
    int v, vp, next;
    auto operator<=>(const OrderedLink&) const = default;
};

// Six orderings of every triple of H_u, sorted lexicographically.
std::vector<std::vector<OrderedLink>> ordered_links(const MatchingFamily& m);

struct ChainOptions {
    bool distinct = true;  // all v's pairwise distinct
    std::uint64_t budget = 50'000'000;
};

// Depth-first, lexicographic in the ordered link sequence. Returns the count.
std::uint64_t for_each_chain(const MatchingFamily& m, int u, int r, const std::function<void(const Chain&)>& visit,
                             const ChainOptions& opt = {});
std::vector<Chain> enumerate_chains(const MatchingFamily& m, int u, int r, const ChainOptions& opt = {});
std::uint64_t count_chains(const MatchingFamily& m, int u, int r, const ChainOptions& opt = {});

struct ChainSetStats {
    int r = 0;
    std::uint64_t count = 0;
    Integer lower_bound, upper_bound;  // (6δn - 4r)^r, (6δn)^r
    Rational delta;                    // 1/3 - 1/(3n)
    bool within() const { return lower_bound <= count && count <= upper_bound; }
};
ChainSetStats chain_stats(int n, int r, std::uint64_t count);

enum class ChainVerdict { Pass, Invalid, IdentityFail };
bool chain_is_valid(const Design& d, const PairIndex& idx, const Chain& c, bool distinct = true);
ChainVerdict verify_chain_completeness(const DesignLcc& lcc, const PairIndex& idx, const Chain& c);

// Uniform random walk over ordered links, rejecting walks that break distinctness.
std::optional<Chain> random_chain(const std::vector<std::vector<OrderedLink>>& links, int u, int r,
                                  std::mt19937_64& rng, bool distinct = true, int max_tries = 10000);

enum class Side { Left, Right };

std::uint64_t count_chains_with_fixed_pattern(const MatchingFamily& m, int u, int r, const std::vector<int>& pattern,
                                              Side side, std::optional<int> tail, const ChainOptions& opt = {});
// Counting bound for chains whose chosen half contains a fixed t-set (tail-fixed variant when requested).
Integer pattern_count_bound(int n, int r, int t, bool tail_fixed);

}  // namespace lcc
