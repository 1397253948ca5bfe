#pragma once

#include "lcc/finite_fields.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lcc {

using Block = std::array<int, 4>;
using Triple = std::array<int, 3>;

struct Design {
    int n = 0;
    std::vector<Block> blocks;  // sorted 4-sets, 0-based points
};

struct DesignCheck {
    bool pass = false;
    std::size_t uncovered_pairs = 0;
    std::size_t multiply_covered_pairs = 0;
    std::optional<std::pair<int, int>> first_violation;
};

struct DesignLcc {
    Design design;
    BitMatrix incidence;  // one row per block
    std::vector<BitVec> dual_basis;
    std::size_t k = 0;
};

// H_u for every u: the blocks through u with u removed.
struct MatchingFamily {
    int n = 0;
    std::vector<std::vector<Triple>> at;
};

// Points of F4^t, lexicographic, coordinate 0 most significant.
std::vector<F4> point_coords(int index, int t);
int point_index(const std::vector<F4>& coords);

Design rm_design(int t, std::size_t max_points = 1u << 16);
DesignCheck verify_design(const Design& d);
BitMatrix incidence_matrix(const Design& d);
DesignLcc make_design_lcc(Design d);
DesignLcc build_rm_design(int t, std::size_t max_points = 1u << 16);

MatchingFamily derive_matchings(const DesignLcc& lcc);
bool matching_is_perfect(const MatchingFamily& m, int u);
// Every triple of every H_u decodes x_u on every dual basis vector.
std::size_t count_matching_parity_failures(const DesignLcc& lcc, const MatchingFamily& m,
                                           std::size_t* checks_done = nullptr);

// index of the unique block containing {a,b}; -1 when a == b
class PairIndex {
public:
    explicit PairIndex(const Design& d);
    int block_of(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }

private:
    int n_;
    std::vector<int> table_;
};

enum class Coeffs { F4, F2 };

struct DimensionRow {
    Projection projection;
    Coeffs coeffs;
    bool squares;
    std::size_t image_dim;
    bool inside_v;
};

struct DimensionReport {
    int t = 0;
    int n = 0;
    std::size_t dim_v = 0;
    std::size_t claimed_k = 0;
    std::vector<DimensionRow> rows;
    std::vector<std::size_t> matching_rows() const;
};

DimensionReport code_dimension_report(int t);

// f(x) for a degree <= 2 polynomial given by coefficients on the monomial list.
struct Monomial {
    int i = -1, j = -1;  // (-1,-1) constant, (i,-1) linear, (i,j) product (i == j for a square)
};
std::vector<Monomial> monomial_basis(int t, bool squares);
F4 eval_monomial(const Monomial& m, const std::vector<F4>& x);

// n <= 2^(2 sqrt(2k))
bool blocklength_bound_holds(std::size_t n, std::size_t k);

std::string design_to_json(const DesignLcc& lcc);
DesignLcc design_from_json(const std::string& text);

}  // namespace lcc
