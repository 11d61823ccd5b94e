#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dsdim/parser.hpp"
#include "dsdim/termalg.hpp"

using namespace dsdim;

namespace {

DTerm t(const std::string& text, int m = 2, int n = 2) {
    return parse_term(text, m, n);
}

DTerm random_term(std::mt19937_64& rng, int m, int n, long max_ord = 3) {
    std::uniform_int_distribution<long> e(0, max_ord);
    Operator op = Operator::identity(m);
    for (int i = 0; i < m; ++i) op.delta_exps[i] = e(rng);
    op.sigma_exp = e(rng);
    return DTerm{op, 1 + static_cast<int>(rng() % n)};
}

}  // namespace

TEST_CASE("divides and quotients") {
    Operator id = Operator::identity(2);
    Operator d1s = Operator::delta(2, 1) * Operator::sigma(2);
    Operator d1d1s = Operator::delta(2, 1, 2) * Operator::sigma(2);
    auto q = divides(id, d1d1s);
    REQUIRE(q);
    CHECK(*q == d1d1s);
    q = divides(d1s, d1d1s);
    REQUIRE(q);
    CHECK(*q == Operator::delta(2, 1));
    CHECK_FALSE(divides(Operator::delta(2, 2), Operator::delta(2, 1, 2)));
}

TEST_CASE("lcm of operators and terms") {
    Operator d1s = Operator::delta(2, 1) * Operator::sigma(2);
    Operator d2 = Operator::delta(2, 2);
    CHECK(lcm_ops({d1s, d2}) ==
          Operator::delta(2, 1) * Operator::delta(2, 2) * Operator::sigma(2));
    CHECK(lcm_ops({d1s, d1s}) == d1s);
    CHECK_FALSE(lcm_terms({t("d1*y1"), t("d2*y2")}));
    auto l = lcm_terms({t("d1*y1"), t("s*y1")});
    REQUIRE(l);
    CHECK(*l == t("d1*s*y1"));
}

TEST_CASE("cmp_sigma and cmp_delta on the paper's comparisons") {
    // sigma^2 y vs sigma d1^2 y under <_sigma: the former is higher
    CHECK(cmp_sigma(t("s^2*y1", 2, 1), t("s*d1^2*y1", 2, 1)) > 0);
    // under <_delta the latter is higher (delta order 2 beats 0)
    CHECK(cmp_delta(t("s^2*y1", 2, 1), t("s*d1^2*y1", 2, 1)) < 0);
    // equal orders: k-exponents decide lexicographically
    CHECK(cmp_delta(t("s*d1^2*y1", 2, 1), t("s*d2^2*y1", 2, 1)) > 0);
    CHECK(cmp_sigma(t("s*d1^2*y1", 2, 1), t("s*d2^2*y1", 2, 1)) > 0);
    CHECK(cmp_sigma(t("d1*y1"), t("d1*y1")) == 0);
    // index is the last tiebreak
    CHECK(cmp_sigma(t("d1*y1"), t("d1*y2")) < 0);
}

TEST_CASE("orderings are total orders") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        DTerm a = random_term(rng, 2, 2), b = random_term(rng, 2, 2),
              c = random_term(rng, 2, 2);
        for (auto cmp : {&cmp_sigma, &cmp_delta}) {
            // antisymmetry and totality
            auto ab = cmp(a, b);
            if (ab == 0)
                CHECK(a == b);
            else if (ab < 0)
                CHECK(cmp(b, a) > 0);
            else
                CHECK(cmp(b, a) < 0);
            // transitivity
            if (cmp(a, b) <= 0 && cmp(b, c) <= 0) CHECK(cmp(a, c) <= 0);
        }
        // agreement when the first two tuple components coincide
        if (a.ord_delta() == b.ord_delta() && a.ord_sigma() == b.ord_sigma())
            CHECK(cmp_delta(a, b) == cmp_sigma(a, b));
        // divides iff lcm is the larger one; quotient times divisor restores
        auto q = divides(a.op, b.op);
        CHECK(q.has_value() == (lcm_ops({a.op, b.op}) == b.op));
        if (q) CHECK(*q * a.op == b.op);
    }
}

TEST_CASE("enumerate_terms: counts and order") {
    auto all = enumerate_terms(2, 1, 2, 1);
    CHECK(all.size() == 12);  // C(4,2) * 2
    for (std::size_t i = 1; i < all.size(); ++i)
        CHECK(cmp_sigma(all[i - 1], all[i]) < 0);

    auto ys = enumerate_terms(0, 3, 0, 0);
    REQUIRE(ys.size() == 3);
    CHECK(ys[0] == (DTerm{Operator::identity(0), 1}));
    CHECK(ys[2] == (DTerm{Operator::identity(0), 3}));

    auto four = enumerate_terms(1, 1, 1, 1);
    REQUIRE(four.size() == 4);
    CHECK(four[0] == t("y1", 1, 1));
    CHECK(four[1] == t("d1*y1", 1, 1));
    CHECK(four[2] == t("s*y1", 1, 1));
    CHECK(four[3] == t("d1*s*y1", 1, 1));
}

TEST_CASE("apply_op") {
    CHECK(apply_op(Operator::identity(2), t("s*y1")) == t("s*y1"));
    CHECK(apply_op(Operator::sigma(2), t("s*y1")) == t("s^2*y1"));
    CHECK(apply_op(Operator::delta(2, 1), t("s*d1*y2")) == t("s*d1^2*y2"));
}

TEST_CASE("operator text syntax round-trip") {
    CHECK(render_term(t("d1^2*d2*s^3*y1", 2, 1)) == "d1^2*d2*s^3*y1");
    CHECK(render_term(t("y2")) == "y2");
    CHECK(render_op(Operator::identity(3)).empty());
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 50; ++trial) {
        DTerm u = random_term(rng, 2, 2);
        CHECK(parse_term(render_term(u), 2, 2) == u);
    }
}

TEST_CASE("m guard") {
    CHECK_THROWS_AS(Operator::identity(9), SemanticError);
    CHECK_THROWS_AS(Operator::check_m(-1), SemanticError);
}
