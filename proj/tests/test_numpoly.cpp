#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dsdim/json_io.hpp"
#include "dsdim/numpoly.hpp"

using namespace dsdim;

namespace {

NumPoly2 random_poly(std::mt19937_64& rng, int d1, int d2, long lo = -9,
                     long hi = 9) {
    std::uniform_int_distribution<long> coef(lo, hi);
    std::vector<std::vector<Int>> m(d1 + 1, std::vector<Int>(d2 + 1));
    for (auto& row : m)
        for (auto& x : row) x = coef(rng);
    return NumPoly2(std::move(m));
}

// Direct rational evaluation of a power-basis matrix: the independent oracle
// for basis changes.
Rat eval_power(const std::vector<std::vector<Rat>>& pw, long r, long s) {
    Rat acc(0);
    for (std::size_t k = 0; k < pw.size(); ++k)
        for (std::size_t l = 0; l < pw[k].size(); ++l) {
            Rat t(1);
            for (std::size_t u = 0; u < k; ++u) t *= r;
            for (std::size_t u = 0; u < l; ++u) t *= s;
            acc += pw[k][l] * t;
        }
    return acc;
}

}  // namespace

TEST_CASE("binom handles negative arguments as the polynomial") {
    CHECK(binom(4, 2) == 6);
    CHECK(binom(-1, 2) == 1);    // (-1)(-2)/2
    CHECK(binom(-3, 3) == -10);  // (-3)(-4)(-5)/6
    CHECK(binom(7, 0) == 1);
    CHECK(binom(2, 5) == 0);
}

TEST_CASE("eval: basis products and the example psi") {
    // C(t1+m,m)(t2+1) with m=2 at (2,1) = C(4,2)*2 = 12
    NumPoly2 free2 = NumPoly2::basis(2, 0) + NumPoly2::basis(2, 1);
    CHECK(free2.eval(2, 1) == 12);

    CHECK(NumPoly2::zero().eval(5, -3) == 0);
    CHECK(NumPoly2::zero().is_zero());

    // (2t1+1)t2 + t1^2 + t1 + 1
    NumPoly2 psi = monomial_to_binomial(
        {{Rat(1), Rat(1)}, {Rat(1), Rat(2)}, {Rat(1), Rat(0)}});
    CHECK(psi.eval(2, 2) == 17);
    CHECK(psi.eval(2, 1) == 12);
    CHECK(render_t2_split(psi) == "(2 t1 + 1) t2 + t1^2 + t1 + 1");
}

TEST_CASE("arithmetic identities and sum assembly") {
    std::mt19937_64 rng(7);
    NumPoly2 p = random_poly(rng, 3, 1);
    CHECK(p + NumPoly2::zero() == p);
    CHECK((p - p).is_zero());

    // C(t1+2,2) + (2t1+1)t2 + C(t1,2) assembles the example psi
    NumPoly2 u1 = NumPoly2::basis(2, 0);
    NumPoly2 u2 = monomial_to_binomial({{Rat(0), Rat(1)}, {Rat(0), Rat(2)}});
    NumPoly2 lam = monomial_to_binomial({{Rat(0)}, {Rat(-1, 2)}, {Rat(1, 2)}});
    NumPoly2 psi = monomial_to_binomial(
        {{Rat(1), Rat(1)}, {Rat(1), Rat(2)}, {Rat(1), Rat(0)}});
    CHECK(u1 + u2 + lam == psi);
}

TEST_CASE("pointwise correctness of add/scale at random points") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> pt(-12, 12);
    for (int trial = 0; trial < 10; ++trial) {
        NumPoly2 p = random_poly(rng, 3, 2);
        NumPoly2 q = random_poly(rng, 2, 1);
        long c = pt(rng);
        for (int k = 0; k < 10; ++k) {
            long r = pt(rng), s = pt(rng);
            CHECK((p + q).eval(r, s) == p.eval(r, s) + q.eval(r, s));
            CHECK(p.scaled(Int(c)).eval(r, s) == c * p.eval(r, s));
            CHECK((p - q).eval(r, s) == p.eval(r, s) - q.eval(r, s));
        }
    }
}

TEST_CASE("monomial_to_binomial: solve and verify by evaluation") {
    // t1^2 + t1 + 1: the solved coefficients must reproduce the values at
    // r = 0, 1, 2 (and everywhere else).
    NumPoly2 q = monomial_to_binomial({{Rat(1)}, {Rat(1)}, {Rat(1)}});
    for (long r = 0; r <= 5; ++r) CHECK(q.eval(r, 0) == r * r + r + 1);
    CHECK(q.deg1() == 2);
    CHECK(q.deg2() == 0);
    CHECK(q.coeff(2, 0) == 2);
    CHECK(q.coeff(1, 0) == -2);
    CHECK(q.coeff(0, 0) == 1);

    NumPoly2 one = monomial_to_binomial({{Rat(1)}});
    CHECK(one == NumPoly2::constant(1));

    // (1/2) t1 t2 is not integer-valued at (1,1)
    CHECK_THROWS_AS(
        monomial_to_binomial({{Rat(0), Rat(0)}, {Rat(0), Rat(1, 2)}}),
        NonIntegralFit);
}

TEST_CASE("fit_from_grid on (2r+1)s with validation points") {
    Grid g;
    for (long r = 3; r <= 6; ++r)
        for (long s = 2; s <= 4; ++s) g[{r, s}] = Int((2 * r + 1) * s);
    NumPoly2 p = fit_from_grid(g, 1, 1);
    // binomial form of 2 t1 t2 + t2, cross-checked by the power-basis oracle
    NumPoly2 expect = monomial_to_binomial({{Rat(0), Rat(1)}, {Rat(0), Rat(2)}});
    CHECK(p == expect);
    for (long r = 0; r <= 9; ++r)
        for (long s = 0; s <= 6; ++s) CHECK(p.eval(r, s) == (2 * r + 1) * s);
}

TEST_CASE("fit_from_grid: constant grid and failure modes") {
    Grid g;
    for (long r = 0; r <= 2; ++r)
        for (long s = 0; s <= 1; ++s) g[{r, s}] = 5;
    NumPoly2 p = fit_from_grid(g, 0, 0);
    CHECK(p == NumPoly2::constant(5));

    // not a polynomial of the capped degrees: a validation point must trip
    Grid bad;
    for (long r = 0; r <= 4; ++r)
        for (long s = 0; s <= 3; ++s) bad[{r, s}] = Int(r * r);
    CHECK_THROWS_AS(fit_from_grid(bad, 1, 1), ValidationMismatch);

    // no validation points beyond the block
    Grid tight;
    for (long r = 0; r <= 1; ++r)
        for (long s = 0; s <= 1; ++s) tight[{r, s}] = Int(r + s);
    CHECK_THROWS_AS(fit_from_grid(tight, 1, 1), Error);
}

TEST_CASE("fit uniqueness: refitting eval samples returns the same matrix") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        NumPoly2 p = random_poly(rng, 3, 1);
        Grid g;
        for (long r = 2; r <= 7; ++r)
            for (long s = 1; s <= 3; ++s) g[{r, s}] = p.eval(r, s);
        NumPoly2 back = fit_from_grid(g, 3, 1);
        CHECK(back == p);
    }
}

TEST_CASE("power form round-trips against eval, negatives included") {
    std::mt19937_64 rng(31);
    NumPoly2 p = random_poly(rng, 3, 1);
    auto pw = p.power_form();
    for (long r = -4; r <= 4; ++r)
        for (long s = -3; s <= 3; ++s)
            CHECK(Rat(p.eval(r, s)) == eval_power(pw, r, s));
}

TEST_CASE("t2-linear split") {
    NumPoly2 psi = monomial_to_binomial(
        {{Rat(1), Rat(1)}, {Rat(1), Rat(2)}, {Rat(1), Rat(0)}});
    auto [f, g] = psi.t2_linear_split();
    // f = 2C(t1+1,1) - 1, g = 2C(t1+2,2) - 2C(t1+1,1) + 1
    REQUIRE(f.size() == 3);
    CHECK(f[0] == -1);
    CHECK(f[1] == 2);
    CHECK(f[2] == 0);
    CHECK(g[0] == 1);
    CHECK(g[1] == -2);
    CHECK(g[2] == 2);
}

TEST_CASE("renderings") {
    NumPoly2 c22 = NumPoly2::basis(2, 0, Int(2));
    CHECK(render_binomial(c22) == "2 C(t1+2,2)");
    CHECK(render_latex(c22) == "2\\binom{t_{1}+2}{2}");
    CHECK(render_power(NumPoly2::zero()) == "0");
    NumPoly2 p = NumPoly2::basis(1, 1) - NumPoly2::constant(3);
    CHECK(render_binomial(p) == "C(t1+1,1) C(t2+1,1) - 3");
}

TEST_CASE("JSON round-trip") {
    std::mt19937_64 rng(41);
    NumPoly2 p = random_poly(rng, 2, 1);
    Json j = to_json(p);
    CHECK(numpoly_from_json(j) == p);
    CHECK(j.at("d1").get<int>() == p.deg1());
    j["extra"] = 1;
    CHECK_THROWS_AS(numpoly_from_json(j), SemanticError);
}
