#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace lcc {

class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t length);

    std::size_t size() const { return len_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v = true);
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& o);
    bool operator==(const BitVec& o) const { return len_ == o.len_ && words_ == o.words_; }

    bool dot(const BitVec& o) const;  // parity of the AND
    std::size_t popcount() const;
    bool any() const;
    int lowest_set() const;  // -1 if zero

    const std::vector<std::uint64_t>& words() const { return words_; }

    // Nibble i carries bits 4i..4i+3 with bit 4i as the most significant.
    std::string to_hex() const;
    static BitVec from_hex(const std::string& hex, std::size_t length);

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

struct BitMatrix {
    std::size_t cols = 0;
    std::vector<BitVec> rows;

    BitMatrix() = default;
    BitMatrix(std::size_t r, std::size_t c);

    std::size_t num_rows() const { return rows.size(); }
    void add_row(const BitVec& row);
    BitVec apply(const BitVec& x) const;  // m * x
    BitMatrix transpose() const;

    void write(std::ostream& os) const;  // "rows cols" header then hex rows
    static BitMatrix read(std::istream& is);
};

struct RrefResult {
    std::vector<BitVec> rows;          // nonzero reduced rows, one per pivot
    std::vector<std::size_t> pivots;   // pivot column of each reduced row
};

RrefResult rref(const BitMatrix& m);

struct RankNullspace {
    std::size_t rank = 0;
    std::vector<BitVec> nullspace;
};

RankNullspace rank_and_nullspace(const BitMatrix& m);
std::size_t rank_of(const std::vector<BitVec>& vecs, std::size_t cols);

// Coordinates on which the given independent vectors restrict bijectively.
std::vector<std::size_t> systematic_subset(const std::vector<BitVec>& basis);

// GF(4) = F2[b]/(b^2+b+1). Code bit0 is the constant part, bit1 the b part,
// so 0,1,2,3 stand for 0, 1, b, 1+b.
struct F4 {
    std::uint8_t v = 0;

    constexpr F4() = default;
    constexpr explicit F4(unsigned code) : v(static_cast<std::uint8_t>(code & 3u)) {}
    constexpr bool a() const { return v & 1u; }
    constexpr bool b() const { return (v >> 1) & 1u; }

    friend constexpr F4 operator+(F4 x, F4 y) { return F4(x.v ^ y.v); }
    friend constexpr bool operator==(F4 x, F4 y) { return x.v == y.v; }
};

F4 f4_mul(F4 x, F4 y);
inline F4 operator*(F4 x, F4 y) { return f4_mul(x, y); }
F4 f4_square(F4 x);

inline constexpr F4 kF4Zero{0}, kF4One{1}, kF4Beta{2}, kF4BetaPlusOne{3};

bool f4_trace(F4 x);        // x + x^2
bool f4_const_proj(F4 x);   // constant coefficient
bool f4_trace_beta(F4 x);   // Tr(b x)

enum class Projection { Trace, Const, TraceBeta };
bool project(Projection p, F4 x);
const char* projection_name(Projection p);

}  // namespace lcc
