#include "doctest.h"
#include "oracles.hpp"

#include "lcc/design_codes.hpp"

#include <random>
#include <set>

using namespace lcc;

TEST_CASE("rm design sizes") {
    auto d1 = rm_design(1);
    CHECK(d1.n == 4);
    REQUIRE(d1.blocks.size() == 1);
    CHECK(d1.blocks[0] == Block{0, 1, 2, 3});
    for (int t = 1; t <= 3; ++t) {
        auto d = rm_design(t);
        CHECK(d.n == (1 << (2 * t)));
        CHECK(static_cast<long>(d.blocks.size()) * 6 == oracle::choose(d.n, 2));
        CHECK(verify_design(d).pass);
    }
}

TEST_CASE("design verification detects damage") {
    auto d = rm_design(2);
    auto missing = d;
    missing.blocks.pop_back();
    auto c = verify_design(missing);
    CHECK(!c.pass);
    CHECK(c.uncovered_pairs == 6);
    CHECK(c.multiply_covered_pairs == 0);

    auto dup = d;
    dup.blocks.push_back(dup.blocks.front());
    c = verify_design(dup);
    CHECK(!c.pass);
    CHECK(c.multiply_covered_pairs == 6);
    REQUIRE(c.first_violation.has_value());
}

TEST_CASE("point indexing is lexicographic") {
    for (int t = 1; t <= 3; ++t)
        for (int p = 0; p < (1 << (2 * t)); ++p) CHECK(point_index(point_coords(p, t)) == p);
    auto c = point_coords(6, 2);  // 6 = 1*4 + 2
    CHECK(c[0] == kF4One);
    CHECK(c[1] == kF4Beta);
}

TEST_CASE("incidence nullity agrees with naive rank") {
    auto lcc = build_rm_design(2);
    CHECK(lcc.incidence.num_rows() == 20);
    std::vector<std::vector<int>> m;
    for (const auto& b : lcc.design.blocks) {
        std::vector<int> row(16, 0);
        for (int p : b) row[p] = 1;
        m.push_back(row);
    }
    std::size_t rank = oracle::naive_rank(m);
    CHECK(lcc.k == 16 - rank);
    CHECK(lcc.k >= 4);
}

TEST_CASE("matchings are perfect and decode") {
    auto l1 = build_rm_design(1);
    auto m1 = derive_matchings(l1);
    REQUIRE(m1.at[0].size() == 1);
    CHECK(m1.at[0][0] == Triple{1, 2, 3});

    auto lcc = build_rm_design(2);
    auto m = derive_matchings(lcc);
    for (int u = 0; u < 16; ++u) {
        CHECK(m.at[u].size() == 5);
        CHECK(matching_is_perfect(m, u));
    }
    std::size_t checks = 0;
    CHECK(count_matching_parity_failures(lcc, m, &checks) == 0);
    CHECK(checks == 16 * 5 * lcc.k);
}

TEST_CASE("lines annihilate degree two polynomials") {
    std::mt19937_64 rng(17);
    for (int t = 1; t <= 3; ++t) {
        auto d = rm_design(t);
        auto monos = monomial_basis(t, true);
        auto sum_over = [&](const Block& b, const std::vector<F4>& coef) {
            F4 s;
            for (int p : b) {
                auto x = point_coords(p, t);
                for (std::size_t i = 0; i < monos.size(); ++i) s = s + coef[i] * eval_monomial(monos[i], x);
            }
            return s;
        };
        if (t == 1) {
            // every coefficient vector on the single line
            std::size_t total = 1;
            for (std::size_t i = 0; i < monos.size(); ++i) total *= 4;
            for (std::size_t code = 0; code < total; ++code) {
                std::vector<F4> coef(monos.size());
                std::size_t c = code;
                for (auto& f : coef) {
                    f = F4(c & 3);
                    c >>= 2;
                }
                CHECK(sum_over(d.blocks[0], coef) == kF4Zero);
            }
        } else {
            for (int trial = 0; trial < 1000; ++trial) {
                std::vector<F4> coef(monos.size());
                for (auto& f : coef) f = F4(rng() & 3);
                const auto& b = d.blocks[rng() % d.blocks.size()];
                CHECK(sum_over(b, coef) == kF4Zero);
            }
        }
    }
}

TEST_CASE("dimension report") {
    for (int t = 2; t <= 3; ++t) {
        auto rep = code_dimension_report(t);
        CHECK(rep.claimed_k == std::size_t(1 + t + t * (t - 1) / 2));
        CHECK(!rep.matching_rows().empty());
        CHECK(rep.dim_v >= rep.claimed_k);
        for (const auto& row : rep.rows) {
            CHECK(row.inside_v);
            CHECK(row.image_dim <= rep.dim_v);
        }
        CHECK(blocklength_bound_holds(rep.n, rep.claimed_k));
    }
}

TEST_CASE("design json round trip") {
    auto lcc = build_rm_design(2);
    auto text = design_to_json(lcc);
    auto back = design_from_json(text);
    CHECK(back.design.blocks == lcc.design.blocks);
    CHECK(back.k == lcc.k);
    CHECK(design_to_json(back) == text);
}
