#include "freesl/error.hpp"
#include "freesl/poly.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace freesl;

namespace {

Poly h(std::size_t m, std::size_t i) { return Poly::variable(m, i); }
Poly c(std::size_t m, long v) { return Poly::constant(m, Rational(v)); }

} // namespace

TEST_CASE("rationals stay canonical and parse strictly")
{
    CHECK(parse_rational("6/-4") == Rational(-3, 2));
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("0/7")) == "0");
    CHECK(to_string(parse_rational("-12")) == "-12");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
    CHECK(rational_pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(rational_pow(Rational(5), 0) == 1);
    std::mt19937_64 rng(7);
    for (int n = 0; n < 200; ++n) {
        const Rational x = oracle::random_rational(rng), y = oracle::random_rational(rng);
        CHECK(is_canonical(x * y + x / y - y));
    }
}

TEST_CASE("poly_arith basics")
{
    CHECK(poly_arith(h(2, 0), -h(2, 0), PolyOp::Add).is_zero());
    CHECK(poly_arith(h(2, 0), h(2, 1), PolyOp::Mul) == Poly::monomial({1, 1}, Rational(1)));
    const Poly sq = poly_arith(h(1, 0) - c(1, 1), h(1, 0) - c(1, 1), PolyOp::Mul);
    CHECK(sq == Poly::monomial({2}, Rational(1)) - Poly::monomial({1}, Rational(2)) + c(1, 1));
    CHECK(poly_arith(h(2, 0), h(2, 0), PolyOp::Sub).is_zero());
    CHECK_THROWS_AS(poly_arith(h(1, 0), h(2, 0), PolyOp::Add), Error);
}

TEST_CASE("shift vectors")
{
    const ShiftVector d = shift_delta_i(3, 1, -1);
    CHECK(d == ShiftVector(IntVec{-1, 0, -1}));
    CHECK((shift_sigma(3, 2, 1) + shift_sigma(3, 2, -1)).is_zero());
    CHECK(shift_delta(3, 1) == ShiftVector(IntVec{1, 1, 1}));
    CHECK_THROWS_AS(shift_sigma(2, 2, 1), Error);
    CHECK_THROWS_AS(shift_delta_i(2, 5, 1), Error);
}

TEST_CASE("shift_apply follows f(h - z)")
{
    const Poly p = Poly::monomial({2, 0}, Rational(1));
    const Poly lhs = shift_apply(shift_sigma(2, 0, 1), p);
    const Poly x = h(2, 0) - c(2, 1);
    CHECK(lhs == x * x);
    // Delta_0^{-1} raises h_1 by one
    CHECK(shift_apply(shift_delta_i(2, 0, -1), h(2, 1)) == h(2, 1) + c(2, 1));
    CHECK(shift_apply(ShiftVector(2), p) == p);
}

TEST_CASE("shift_apply is a ring action of Z^m")
{
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> step(-3, 3);
    for (int n = 0; n < 60; ++n) {
        const std::size_t m = 1 + static_cast<std::size_t>(n % 3);
        const Poly p = oracle::random_poly(rng, m, 3, 4), q = oracle::random_poly(rng, m, 2, 3);
        ShiftVector z(m), w(m);
        for (std::size_t i = 0; i < m; ++i) {
            z[i] = step(rng);
            w[i] = step(rng);
        }
        CHECK(shift_apply(z, shift_apply(w, p)) == shift_apply(z + w, p));
        CHECK(shift_apply(z, p * q) == shift_apply(z, p) * shift_apply(z, q));
        CHECK(shift_apply(z, p + q) == shift_apply(z, p) + shift_apply(z, q));
        const Poly shifted = shift_apply(z, p);
        for (const auto& [e, coef] : shifted.terms())
            CHECK(is_canonical(coef));
    }
}

TEST_CASE("exact_divide")
{
    const Poly x = h(2, 0);
    auto r = exact_divide(x * x - c(2, 1), x - c(2, 1));
    REQUIRE(r);
    CHECK(*r == x + c(2, 1));
    CHECK_FALSE(exact_divide(x + c(2, 1), h(2, 1)));
    auto z = exact_divide(Poly(2), h(2, 1));
    REQUIRE(z);
    CHECK(z->is_zero());
    CHECK_THROWS_AS(exact_divide(x, Poly(2)), Error);

    std::mt19937_64 rng(5);
    for (int n = 0; n < 60; ++n) {
        const Poly p = oracle::random_poly(rng, 2, 3, 3), q = oracle::random_poly(rng, 2, 2, 3);
        if (q.is_zero())
            continue;
        auto back = exact_divide(p * q, q);
        REQUIRE(back);
        CHECK(*back == p);
        if (auto d = exact_divide(p + c(2, 1), q))
            CHECK(*d * q == p + c(2, 1));
    }
}

TEST_CASE("substitute_sum")
{
    const UniPoly X({Rational(0), Rational(1)});
    CHECK(substitute_sum(X, Rational(0), 2) == h(2, 0) + h(2, 1));
    CHECK(substitute_sum(X, Rational(1), 2) == h(2, 0) + h(2, 1) + c(2, 1));
    CHECK(substitute_sum(UniPoly::constant(Rational(1)), Rational(0), 3) == c(3, 1));
    const UniPoly F = UniPoly::x_minus(Rational(2)) * UniPoly::x_minus(Rational(-1));
    const Poly H = sum_of_variables(2);
    CHECK(substitute_sum(F, Rational(0), 2) == (H - c(2, 2)) * (H + c(2, 1)));
}

TEST_CASE("poly structural queries")
{
    const Poly p = Poly::monomial({2, 1}, Rational(3)) + h(2, 1);
    CHECK(p.total_degree() == 3);
    CHECK(p.degree_in(0) == 2);
    CHECK_FALSE(p.only_involves(1));
    CHECK(Poly(2).total_degree() == -1);
    CHECK(p.coefficient({2, 1}) == 3);
    CHECK(p.to_string() == "3*h1^2*h2 + h2");
}
