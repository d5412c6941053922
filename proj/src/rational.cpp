#include "freesl/rational.hpp"

#include "freesl/error.hpp"

#include <cctype>

namespace freesl {

namespace {

bool valid_integer_text(const std::string& s)
{
    std::size_t i = 0;
    if (i < s.size() && (s[i] == '-' || s[i] == '+'))
        ++i;
    if (i == s.size())
        return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            return false;
    return true;
}

} // namespace

Rational parse_rational(const std::string& text)
{
    const auto slash = text.find('/');
    std::string num = text.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    if (!valid_integer_text(num) || !valid_integer_text(den))
        fail(ErrorKind::Parse, "malformed rational '" + text + "'");
    if (num[0] == '+')
        num.erase(0, 1);
    if (den[0] == '+')
        den.erase(0, 1);
    Integer n(num, 10), d(den, 10);
    if (d == 0)
        fail(ErrorKind::Parse, "zero denominator in '" + text + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

bool is_canonical(const Rational& q)
{
    if (sgn(q.get_den()) <= 0)
        return false;
    Integer g;
    Integer a = abs(q.get_num());
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), q.get_den().get_mpz_t());
    return g == 1;
}

Rational rational_pow(const Rational& base, long exponent)
{
    if (exponent < 0) {
        require(base != 0, ErrorKind::DivisionByZero, "negative power of zero");
        return rational_pow(Rational(1) / base, -exponent);
    }
    Rational result = 1, b = base;
    for (unsigned long e = static_cast<unsigned long>(exponent); e; e >>= 1) {
        if (e & 1)
            result *= b;
        b *= b;
    }
    return result;
}

} // namespace freesl
