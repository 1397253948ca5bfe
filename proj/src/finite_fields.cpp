#include "lcc/finite_fields.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace lcc {

BitVec::BitVec(std::size_t length) : len_(length), words_((length + 63) / 64, 0) {}

void BitVec::set(std::size_t i, bool v) {
    std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) words_[i >> 6] |= mask;
    else words_[i >> 6] &= ~mask;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (o.len_ != len_) throw std::invalid_argument("BitVec length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
}

bool BitVec::dot(const BitVec& o) const {
    if (o.len_ != len_) throw std::invalid_argument("BitVec length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & o.words_[i];
    return std::popcount(acc) & 1;
}

std::size_t BitVec::popcount() const {
    std::size_t c = 0;
    for (auto w : words_) c += std::popcount(w);
    return c;
}

bool BitVec::any() const {
    for (auto w : words_)
        if (w) return true;
    return false;
}

int BitVec::lowest_set() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
        if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
    return -1;
}

std::string BitVec::to_hex() const {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    for (std::size_t base = 0; base < len_; base += 4) {
        unsigned nib = 0;
        for (std::size_t j = 0; j < 4; ++j) {
            nib <<= 1;
            if (base + j < len_ && get(base + j)) nib |= 1;
        }
        out.push_back(digits[nib]);
    }
    return out;
}

BitVec BitVec::from_hex(const std::string& hex, std::size_t length) {
    if (hex.size() != (length + 3) / 4) throw std::invalid_argument("hex row has wrong length");
    BitVec v(length);
    for (std::size_t i = 0; i < hex.size(); ++i) {
        char c = hex[i];
        unsigned nib;
        if (c >= '0' && c <= '9') nib = c - '0';
        else if (c >= 'a' && c <= 'f') nib = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') nib = c - 'A' + 10;
        else throw std::invalid_argument("bad hex digit");
        for (std::size_t j = 0; j < 4; ++j) {
            bool bit = (nib >> (3 - j)) & 1;
            std::size_t pos = 4 * i + j;
            if (pos < length) v.set(pos, bit);
            else if (bit) throw std::invalid_argument("nonzero padding in hex row");
        }
    }
    return v;
}

BitMatrix::BitMatrix(std::size_t r, std::size_t c) : cols(c), rows(r, BitVec(c)) {}

void BitMatrix::add_row(const BitVec& row) {
    if (row.size() != cols) throw std::invalid_argument("row width mismatch");
    rows.push_back(row);
}

BitVec BitMatrix::apply(const BitVec& x) const {
    BitVec out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) out.set(i, rows[i].dot(x));
    return out;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols, rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (rows[i].get(j)) t.rows[j].set(i);
    return t;
}

void BitMatrix::write(std::ostream& os) const {
    os << rows.size() << ' ' << cols << '\n';
    for (const auto& r : rows) os << r.to_hex() << '\n';
}

BitMatrix BitMatrix::read(std::istream& is) {
    std::size_t r = 0, c = 0;
    if (!(is >> r >> c)) throw std::invalid_argument("missing matrix header");
    BitMatrix m;
    m.cols = c;
    for (std::size_t i = 0; i < r; ++i) {
        std::string hex;
        if (!(is >> hex)) throw std::invalid_argument("truncated matrix");
        m.rows.push_back(BitVec::from_hex(hex, c));
    }
    return m;
}

RrefResult rref(const BitMatrix& m) {
    std::vector<BitVec> work = m.rows;
    RrefResult res;
    std::size_t next = 0;
    for (std::size_t c = 0; c < m.cols && next < work.size(); ++c) {
        std::size_t piv = next;
        while (piv < work.size() && !work[piv].get(c)) ++piv;
        if (piv == work.size()) continue;
        std::swap(work[next], work[piv]);
        for (std::size_t i = 0; i < work.size(); ++i)
            if (i != next && work[i].get(c)) work[i] ^= work[next];
        res.pivots.push_back(c);
        ++next;
    }
    work.resize(next);
    res.rows = std::move(work);
    return res;
}

RankNullspace rank_and_nullspace(const BitMatrix& m) {
    RrefResult r = rref(m);
    RankNullspace out;
    out.rank = r.pivots.size();
    std::vector<bool> is_pivot(m.cols, false);
    for (auto p : r.pivots) is_pivot[p] = true;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        BitVec x(m.cols);
        x.set(f);
        for (std::size_t i = 0; i < r.rows.size(); ++i)
            if (r.rows[i].get(f)) x.set(r.pivots[i]);
        out.nullspace.push_back(std::move(x));
    }
    return out;
}

std::size_t rank_of(const std::vector<BitVec>& vecs, std::size_t cols) {
    BitMatrix m;
    m.cols = cols;
    m.rows = vecs;
    return rref(m).pivots.size();
}

std::vector<std::size_t> systematic_subset(const std::vector<BitVec>& basis) {
    if (basis.empty()) return {};
    BitMatrix m;
    m.cols = basis.front().size();
    m.rows = basis;
    RrefResult r = rref(m);
    if (r.pivots.size() != basis.size()) throw std::invalid_argument("basis vectors are linearly dependent");
    return r.pivots;
}

F4 f4_mul(F4 x, F4 y) {
    // (a0 + b0 B)(a1 + b1 B) with B^2 = B + 1
    unsigned a = (x.a() & y.a()) ^ (x.b() & y.b());
    unsigned b = (x.a() & y.b()) ^ (x.b() & y.a()) ^ (x.b() & y.b());
    return F4(a | (b << 1));
}

F4 f4_square(F4 x) { return f4_mul(x, x); }

bool f4_trace(F4 x) { return (x + f4_square(x)).a(); }
bool f4_const_proj(F4 x) { return x.a(); }
bool f4_trace_beta(F4 x) { return f4_trace(kF4Beta * x); }

bool project(Projection p, F4 x) {
    switch (p) {
        case Projection::Trace: return f4_trace(x);
        case Projection::Const: return f4_const_proj(x);
        case Projection::TraceBeta: return f4_trace_beta(x);
    }
    return false;
}

const char* projection_name(Projection p) {
    switch (p) {
        case Projection::Trace: return "trace";
        case Projection::Const: return "const";
        case Projection::TraceBeta: return "trace_beta";
    }
    return "?";
}

}  // namespace lcc
