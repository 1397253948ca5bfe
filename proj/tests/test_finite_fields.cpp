#include "doctest.h"
#include "oracles.hpp"

#include "lcc/finite_fields.hpp"

#include <random>
#include <sstream>

using namespace lcc;

namespace {

std::vector<std::vector<int>> to_ints(const BitMatrix& m) {
    std::vector<std::vector<int>> out;
    for (const auto& r : m.rows) {
        std::vector<int> row(m.cols);
        for (std::size_t j = 0; j < m.cols; ++j) row[j] = r.get(j);
        out.push_back(row);
    }
    return out;
}

BitMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, double density = 0.5) {
    std::bernoulli_distribution coin(density);
    BitMatrix m(r, c);
    for (auto& row : m.rows)
        for (std::size_t j = 0; j < c; ++j) row.set(j, coin(rng));
    return m;
}

}  // namespace

TEST_CASE("f4 multiplication table matches polynomial reduction") {
    for (unsigned x = 0; x < 4; ++x)
        for (unsigned y = 0; y < 4; ++y) CHECK((F4(x) * F4(y)).v == oracle::gf4_mul(x, y));
    CHECK(kF4Beta * kF4Beta == kF4BetaPlusOne);
    CHECK(kF4BetaPlusOne * kF4BetaPlusOne == kF4Beta);
    for (unsigned x = 0; x < 4; ++x) CHECK(kF4One * F4(x) == F4(x));
}

TEST_CASE("f4 field axioms hold exhaustively") {
    for (unsigned x = 0; x < 4; ++x)
        for (unsigned y = 0; y < 4; ++y) {
            CHECK(F4(x) * F4(y) == F4(y) * F4(x));
            for (unsigned z = 0; z < 4; ++z) {
                CHECK(F4(x) * (F4(y) + F4(z)) == F4(x) * F4(y) + F4(x) * F4(z));
                CHECK((F4(x) * F4(y)) * F4(z) == F4(x) * (F4(y) * F4(z)));
            }
        }
    for (unsigned x = 1; x < 4; ++x) {
        int inverses = 0;
        for (unsigned y = 1; y < 4; ++y) inverses += (F4(x) * F4(y) == kF4One);
        CHECK(inverses == 1);
    }
}

TEST_CASE("projections to GF(2)") {
    CHECK(f4_trace(kF4Zero) == 0);
    CHECK(f4_trace(kF4Beta) == 1);
    CHECK(f4_trace(kF4One) == 0);
    CHECK(f4_trace(kF4BetaPlusOne) == 1);
    CHECK(f4_const_proj(kF4One) == 1);
    CHECK(f4_const_proj(kF4Beta) == 0);
    for (unsigned x = 0; x < 4; ++x) {
        // x + x^2 must land in the prime field
        F4 s = F4(x) + F4(x) * F4(x);
        CHECK(s.b() == 0);
        CHECK(f4_trace_beta(F4(x)) == f4_trace(kF4Beta * F4(x)));
        for (unsigned y = 0; y < 4; ++y)
            for (Projection p : {Projection::Trace, Projection::Const, Projection::TraceBeta})
                CHECK(project(p, F4(x) + F4(y)) == (project(p, F4(x)) ^ project(p, F4(y))));
    }
}

TEST_CASE("bitvec padding and hex round trip") {
    std::mt19937_64 rng(7);
    for (std::size_t len : {1, 3, 4, 63, 64, 65, 130}) {
        BitVec v(len);
        for (std::size_t i = 0; i < len; ++i) v.set(i, rng() & 1);
        auto hex = v.to_hex();
        CHECK(hex.size() == (len + 3) / 4);
        CHECK(BitVec::from_hex(hex, len) == v);
        std::size_t tail = len % 64;
        if (tail) CHECK((v.words().back() >> tail) == 0);
    }
    BitVec v(5);
    v.set(0);
    v.set(4);
    CHECK(v.to_hex() == "88");
    CHECK_THROWS(BitVec::from_hex("89", 5));
}

TEST_CASE("matrix serialization round trip") {
    std::mt19937_64 rng(3);
    auto m = random_matrix(rng, 7, 13);
    std::stringstream ss;
    m.write(ss);
    auto back = BitMatrix::read(ss);
    REQUIRE(back.rows.size() == 7);
    for (std::size_t i = 0; i < 7; ++i) CHECK(back.rows[i] == m.rows[i]);
}

TEST_CASE("rank and nullspace small cases") {
    BitMatrix id(3, 3);
    for (int i = 0; i < 3; ++i) id.rows[i].set(i);
    auto r = rank_and_nullspace(id);
    CHECK(r.rank == 3);
    CHECK(r.nullspace.empty());

    BitMatrix ones(1, 4);
    for (int j = 0; j < 4; ++j) ones.rows[0].set(j);
    r = rank_and_nullspace(ones);
    CHECK(r.rank == 1);
    CHECK(r.nullspace.size() == 3);
}

TEST_CASE("rank agrees with naive elimination and with the transpose") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t rows = 1 + rng() % 20, cols = 1 + rng() % 20;
        auto m = random_matrix(rng, rows, cols, trial % 3 == 0 ? 0.15 : 0.5);
        auto res = rank_and_nullspace(m);
        CHECK(res.rank == oracle::naive_rank(to_ints(m)));
        CHECK(res.rank == rank_and_nullspace(m.transpose()).rank);
        CHECK(res.rank + res.nullspace.size() == cols);
        for (const auto& x : res.nullspace) CHECK(!m.apply(x).any());
        CHECK(rank_of(res.nullspace, cols) == res.nullspace.size());
    }
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_matrix(rng, 20, 20);
        CHECK(rank_and_nullspace(m).rank == rank_and_nullspace(m.transpose()).rank);
    }
}

TEST_CASE("systematic subset") {
    std::vector<BitVec> std_basis;
    for (int i = 0; i < 3; ++i) {
        BitVec e(6);
        e.set(i);
        std_basis.push_back(e);
    }
    CHECK(systematic_subset(std_basis) == std::vector<std::size_t>{0, 1, 2});

    BitVec v(3);
    v.set(0);
    v.set(1);
    CHECK(systematic_subset({v}) == std::vector<std::size_t>{0});
    CHECK_THROWS_AS(systematic_subset({v, v}), std::invalid_argument);

    // restriction to the subset is a bijection on random independent sets
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto m = random_matrix(rng, 5, 12);
        auto rr = rref(m);
        std::vector<BitVec> basis = rr.rows;
        auto s = systematic_subset(basis);
        REQUIRE(s.size() == basis.size());
        std::set<unsigned> images;
        for (unsigned msg = 0; msg < (1u << basis.size()); ++msg) {
            BitVec x(12);
            for (std::size_t i = 0; i < basis.size(); ++i)
                if ((msg >> i) & 1) x ^= basis[i];
            unsigned img = 0;
            for (std::size_t i = 0; i < s.size(); ++i) img |= unsigned(x.get(s[i])) << i;
            images.insert(img);
        }
        CHECK(images.size() == (1u << basis.size()));
    }
}
