#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dsdim/dpoly.hpp"
#include "dsdim/parser.hpp"

using namespace dsdim;

namespace {

QPoly P(const std::string& text, int m = 2, int n = 2) {
    return parse_poly(text, m, n);
}

QPoly random_linear(std::mt19937_64& rng, int m, int n, long max_ord = 2,
                    int max_terms = 3) {
    QPoly p(m, n);
    std::uniform_int_distribution<long> e(0, max_ord), c(-3, 3);
    int k = 1 + static_cast<int>(rng() % max_terms);
    for (int i = 0; i < k; ++i) {
        Operator op = Operator::identity(m);
        for (int j = 0; j < m; ++j) op.delta_exps[j] = e(rng);
        op.sigma_exp = e(rng);
        long cv = c(rng);
        if (cv == 0) cv = 1;
        p = p + QPoly::from_term(m, n, DTerm{op, 1 + static_cast<int>(rng() % n)},
                                 Rat(cv));
    }
    return p;
}

}  // namespace

TEST_CASE("coefficient field laws for QConstants") {
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<long> v(-20, 20);
    for (int i = 0; i < 50; ++i) {
        Rat a(v(rng), 1 + std::abs(v(rng))), b(v(rng), 1 + std::abs(v(rng)));
        CHECK(QConstants::delta(0, QConstants::mul(a, b)) == 0);  // Leibniz, trivially
        CHECK(QConstants::sigma(QConstants::mul(a, b)) ==
              QConstants::mul(QConstants::sigma(a), QConstants::sigma(b)));
        CHECK(QConstants::sigma(QConstants::one()) == QConstants::one());
        if (!QConstants::is_zero(a))
            CHECK(QConstants::mul(a, QConstants::inv(a)) == QConstants::one());
    }
}

TEST_CASE("apply_operator on the example polynomials") {
    QPoly B = P("s*y1 + d1^2*y1 + d2^2*y1", 2, 1);
    CHECK(B.apply_operator(Operator::identity(2)) == B);
    CHECK(B.apply_sigma() == P("s^2*y1 + s*d1^2*y1 + s*d2^2*y1", 2, 1));

    // Leibniz on a product of terms
    QPoly prod = P("(s*y1)*(d1*y1)", 2, 1);
    CHECK(prod.apply_delta(1) ==
          P("(s*d1*y1)*(d1*y1) + (s*y1)*(d1^2*y1)", 2, 1));
}

TEST_CASE("operator action is a ring action") {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        QPoly a = random_linear(rng, 2, 2);
        QPoly b = random_linear(rng, 2, 2);
        CHECK((a * b).apply_sigma() == a.apply_sigma() * b.apply_sigma());
        CHECK((a * b).apply_delta(1) ==
              a.apply_delta(1) * b + a * b.apply_delta(1));
        Operator ta = Operator::delta(2, 1) * Operator::sigma(2);
        Operator tb = Operator::delta(2, 2, 2);
        CHECK(a.apply_operator(ta).apply_operator(tb) ==
              a.apply_operator(ta * tb));
    }
}

TEST_CASE("leaders") {
    QPoly A = P("s^2*y1 + s*d1^2*y1 + s*d2^2*y1", 2, 1);
    CHECK(A.sigma_leader() == parse_term("s^2*y1", 2, 1));
    CHECK(A.delta_leader() == parse_term("s*d1^2*y1", 2, 1));

    QPoly y = P("y1", 2, 1);
    CHECK(y.sigma_leader() == parse_term("y1", 2, 1));
    CHECK(y.delta_leader() == parse_term("y1", 2, 1));

    QPoly c = QPoly::constant(2, 1, Rat(5));
    CHECK_THROWS_AS(c.sigma_leader(), ConstantPolynomial);
}

TEST_CASE("leading coefficient and separant") {
    QPoly lin = P("s*y1 + d1^2*y1 + d2^2*y1", 2, 1);
    CHECK(lin.leading_coefficient() == QPoly::constant(2, 1, Rat(1)));
    CHECK(lin.separant() == QPoly::constant(2, 1, Rat(1)));

    // A = (d1 y)(s y)^2 + y: I_A = d1 y, S_A = 2 (d1 y)(s y)
    QPoly A = P("(d1*y1)*(s*y1)^2 + y1", 2, 1);
    CHECK(A.leading_coefficient() == P("d1*y1", 2, 1));
    CHECK(A.separant() == P("2*(d1*y1)*(s*y1)", 2, 1));

    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 20; ++trial) {
        QPoly L = random_linear(rng, 2, 2);
        CHECK(L.separant() == L.leading_coefficient());
    }
}

TEST_CASE("sigma shifts the sigma-leader") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 30; ++trial) {
        QPoly L = random_linear(rng, 2, 2);
        CHECK(L.apply_sigma().sigma_leader() ==
              apply_op(Operator::sigma(2), L.sigma_leader()));
    }
}

TEST_CASE("rank comparison") {
    QPoly c = QPoly::constant(2, 1, Rat(3));
    QPoly sy = P("s*y1", 2, 1);
    CHECK(rank_cmp(c, sy) < 0);
    CHECK(rank_cmp(c, QPoly::constant(2, 1, Rat(-7))) == 0);

    QPoly lin = P("s*y1 + y1", 2, 1);
    QPoly sq = P("(s*y1)^2", 2, 1);
    CHECK(rank_cmp(lin, sq) < 0);  // same leader, degree 1 < 2
    CHECK(rank_cmp(lin, lin) == 0);

    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        QPoly a = random_linear(rng, 2, 2), b = random_linear(rng, 2, 2);
        auto ab = rank_cmp(a, b), ba = rank_cmp(b, a);
        if (ab < 0) CHECK(ba > 0);
        if (ab == 0) CHECK(ba == 0);
        if (ab > 0) CHECK(ba < 0);
    }
}

TEST_CASE("degree bookkeeping in a term") {
    QPoly A = P("(s*y1)^3*(d1*y1) + (s*y1)*(d2*y2) + y2", 2, 2);
    CHECK(A.degree_in(parse_term("s*y1", 2, 2)) == 3);
    CHECK(A.degree_in(parse_term("d1*y1", 2, 2)) == 1);
    CHECK(A.degree_in(parse_term("d1^2*y1", 2, 2)) == 0);
    auto parts = A.decompose_in(parse_term("s*y1", 2, 2));
    CHECK(parts.size() == 3);  // degrees 0, 1, 3
    CHECK(parts.at(3) == P("d1*y1", 2, 2));
}

TEST_CASE("render/parse round-trip for polynomials") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 40; ++trial) {
        QPoly a = random_linear(rng, 2, 2);
        QPoly b = random_linear(rng, 2, 2);
        QPoly p = a * b + random_linear(rng, 2, 2).scaled(Rat(1, 2));
        CHECK(parse_poly(render_poly(p), 2, 2) == p);
    }
    CHECK(render_poly(QPoly::zero(2, 1)) == "0");
}
