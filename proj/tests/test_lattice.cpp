#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dsdim/json_io.hpp"
#include "dsdim/lattice.hpp"

using namespace dsdim;

namespace {

PointSet random_set(std::mt19937_64& rng, int m, long max_entry,
                    int max_points) {
    std::uniform_int_distribution<long> e(0, max_entry);
    std::uniform_int_distribution<int> cnt(0, max_points);
    PointSet A{m, {}};
    int k = cnt(rng);
    for (int i = 0; i < k; ++i) {
        MultiIndex mi;
        for (int j = 0; j <= m; ++j) mi.entries.push_back(e(rng));
        A.points.push_back(std::move(mi));
    }
    return A;
}

}  // namespace

TEST_CASE("leq_product") {
    MultiIndex z{{0, 0, 0}}, a{{1, 0, 2}}, b{{0, 3, 2}}, c{{1, 0, 1}},
        d{{2, 1, 1}};
    CHECK(leq_product(z, a));
    CHECK(leq_product(z, b));
    CHECK_FALSE(leq_product(a, b));
    CHECK_FALSE(leq_product(b, a));
    CHECK(leq_product(c, d));
    CHECK_THROWS_AS(leq_product(MultiIndex{{1, 2}}, a), DimensionMismatch);
}

TEST_CASE("minimal_elements") {
    PointSet A{1, {MultiIndex{{1, 1}}, MultiIndex{{1, 2}}, MultiIndex{{2, 1}}}};
    PointSet Am = minimal_elements(A);
    REQUIRE(Am.points.size() == 1);
    CHECK(Am.points[0] == MultiIndex{{1, 1}});

    CHECK(minimal_elements(PointSet{2, {}}).points.empty());

    PointSet anti{2, {MultiIndex{{1, 0, 0}}, MultiIndex{{0, 1, 0}},
                      MultiIndex{{0, 0, 1}}}};
    CHECK(minimal_elements(anti).points.size() == 3);
}

TEST_CASE("v_count examples") {
    PointSet zero{2, {MultiIndex{{0, 0, 0}}}};
    CHECK(v_count(zero, 4, 3) == 0);
    CHECK(v_count(PointSet{2, {}}, 2, 1) == 12);
    // {(2,0)} with m=1 at (5,3): first coordinate must stay below 2
    PointSet one{1, {MultiIndex{{2, 0}}}};
    CHECK(v_count(one, 5, 3) == 8);
}

TEST_CASE("omega closed forms") {
    for (int m = 1; m <= 4; ++m) {
        NumPoly2 w = omega(PointSet{m, {}});
        NumPoly2 expect = NumPoly2::basis(m, 0) + NumPoly2::basis(m, 1);
        CHECK(w == expect);
        CHECK(w.deg1() == m);
        CHECK(w.deg2() == 1);
    }
    PointSet zero{2, {MultiIndex{{0, 0, 0}}}};
    CHECK(omega(zero).is_zero());
    // sigma-leader set of the two-derivation example: U' = C(t1+2,2)
    PointSet sy{2, {MultiIndex{{0, 0, 1}}}};
    CHECK(omega(sy) == NumPoly2::basis(2, 0));
}

TEST_CASE("stability_threshold") {
    CHECK(stability_threshold(PointSet{3, {}}) == std::pair<long, long>(0, 0));
    PointSet sy{2, {MultiIndex{{0, 0, 1}}}};
    CHECK(stability_threshold(sy) == std::pair<long, long>(0, 1));
    // enumeration confirms equality already from (0, 1)
    NumPoly2 w = omega(sy);
    for (long r = 0; r <= 6; ++r)
        for (long s = 1; s <= 5; ++s) CHECK(w.eval(r, s) == v_count(sy, r, s));

    PointSet two{1, {MultiIndex{{2, 0}}, MultiIndex{{0, 3}}}};
    CHECK(stability_threshold(two) == std::pair<long, long>(2, 3));
    NumPoly2 w2 = omega(two);
    for (long r = 2; r <= 8; ++r)
        for (long s = 3; s <= 8; ++s) CHECK(w2.eval(r, s) == v_count(two, r, s));
}

TEST_CASE("omega equals omega of the minimal elements") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        int m = 1 + static_cast<int>(rng() % 3);
        PointSet A = random_set(rng, m, 4, 6);
        CHECK(omega(A) == omega(minimal_elements(A)));
    }
}

TEST_CASE("omega agrees with enumeration on the padded stability grid") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 25; ++trial) {
        int m = 1 + static_cast<int>(rng() % 3);
        PointSet A = random_set(rng, m, 4, 6);
        NumPoly2 w = omega(A);
        CHECK(w.deg1() <= m);
        CHECK(w.deg2() <= 1);
        auto [r0, s0] = stability_threshold(A);
        for (long r = r0; r <= r0 + 4; ++r)
            for (long s = s0; s <= s0 + 3; ++s)
                REQUIRE(w.eval(r, s) == v_count(A, r, s));
        bool has_zero = false;
        for (const auto& p : A.points)
            if (p.ord1() == 0 && p.ord2() == 0) has_zero = true;
        CHECK(w.is_zero() == has_zero);
        if (A.points.empty())
            CHECK(w.deg1() + w.deg2() == m + 1);
    }
}

TEST_CASE("m = 0 lattice (pure difference grading)") {
    PointSet A{0, {MultiIndex{{1}}}};
    NumPoly2 w = omega(A);
    CHECK(w == NumPoly2::constant(1));
    CHECK(v_count(A, 0, 5) == 1);
    CHECK(v_count(PointSet{0, {}}, 3, 5) == 6);
}

TEST_CASE("PointSet JSON round-trip") {
    PointSet A{2, {MultiIndex{{0, 1, 2}}, MultiIndex{{3, 0, 0}}}};
    Json j = to_json(A);
    PointSet back = pointset_from_json(j);
    CHECK(back.m == A.m);
    CHECK(back.points == A.points);
    CHECK_THROWS_AS(
        pointset_from_json(Json{{"m", 1}, {"points", Json::array({Json::array({1})})}}),
        SemanticError);
}
