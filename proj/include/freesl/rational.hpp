#pragma once

#include <gmpxx.h>

#include <string>

namespace freesl {

// mpq_class keeps values canonical after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "n", "-n", "n/d". Throws Error(Parse) on malformed input or zero denominator.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

bool is_canonical(const Rational& q);

Rational rational_pow(const Rational& base, long exponent);

} // namespace freesl
