#pragma once

#include "freesl/rational.hpp"

#include <boost/container/small_vector.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace freesl {

using IntVec = boost::container::small_vector<int, 4>;
using Exponents = IntVec;

// Shift z acts on polynomials by f(h) -> f(h - z). Composition is addition.
class ShiftVector {
public:
    ShiftVector() = default;
    explicit ShiftVector(std::size_t m) : z_(m, 0) {}
    explicit ShiftVector(IntVec z) : z_(std::move(z)) {}

    std::size_t size() const { return z_.size(); }
    int operator[](std::size_t i) const { return z_[i]; }
    int& operator[](std::size_t i) { return z_[i]; }
    const IntVec& values() const { return z_; }
    bool is_zero() const;

    ShiftVector operator+(const ShiftVector& o) const;
    ShiftVector operator-(const ShiftVector& o) const;
    ShiftVector operator-() const;

    bool operator==(const ShiftVector& o) const { return z_ == o.z_; }
    bool operator<(const ShiftVector& o) const { return z_ < o.z_; }

private:
    IntVec z_;
};

// Variable indices are 0-based in the C++ API.
ShiftVector shift_sigma(std::size_t m, std::size_t i, int power);
ShiftVector shift_delta(std::size_t m, int power);
ShiftVector shift_delta_i(std::size_t m, std::size_t i, int power);

class Poly {
public:
    using Term = std::pair<Exponents, Rational>;

    Poly() = default;
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const Rational& c);
    static Poly variable(std::size_t nvars, std::size_t i);
    static Poly monomial(Exponents e, const Rational& c);
    // Sorts, merges and drops zero coefficients.
    static Poly from_terms(std::size_t nvars, std::vector<Term> terms);

    std::size_t nvars() const { return nvars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    Rational coefficient(const Exponents& e) const;
    int total_degree() const; // -1 for the zero polynomial
    int degree_in(std::size_t var) const;
    bool only_involves(std::size_t var) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const Rational& c);
    Poly operator-() const;
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }

    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // Monomial times polynomial; keeps term order without re-sorting.
    Poly times_monomial(const Exponents& e, const Rational& c) const;

    std::string to_string() const;

private:
    std::size_t nvars_ = 0;
    std::vector<Term> terms_; // ascending lexicographic exponents, nonzero coefficients
};

enum class PolyOp { Add, Sub, Mul };
Poly poly_arith(const Poly& p, const Poly& q, PolyOp kind);

Poly shift_apply(const ShiftVector& z, const Poly& p);

// Returns r with p == q * r when q divides p; empty otherwise.
std::optional<Poly> exact_divide(const Poly& p, const Poly& q);

class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs); // coeffs[d] multiplies X^d

    static UniPoly constant(const Rational& c) { return UniPoly({c}); }
    static UniPoly x_minus(const Rational& root) { return UniPoly({-root, Rational(1)}); }

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    UniPoly operator*(const UniPoly& o) const;
    bool operator==(const UniPoly& o) const { return coeffs_ == o.coeffs_; }

private:
    std::vector<Rational> coeffs_;
};

// F(h_1 + ... + h_m + offset).
Poly substitute_sum(const UniPoly& F, const Rational& offset, std::size_t m);

// Sum of all variables, as a polynomial.
Poly sum_of_variables(std::size_t m);

} // namespace freesl
