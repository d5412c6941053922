#include "freesl/poly.hpp"

#include "freesl/error.hpp"

#include <algorithm>
#include <sstream>

namespace freesl {

bool ShiftVector::is_zero() const
{
    return std::all_of(z_.begin(), z_.end(), [](int v) { return v == 0; });
}

ShiftVector ShiftVector::operator+(const ShiftVector& o) const
{
    require(size() == o.size(), ErrorKind::Dimension, "shift vector length mismatch");
    ShiftVector r(*this);
    for (std::size_t i = 0; i < size(); ++i)
        r.z_[i] += o.z_[i];
    return r;
}

ShiftVector ShiftVector::operator-(const ShiftVector& o) const { return *this + (-o); }

ShiftVector ShiftVector::operator-() const
{
    ShiftVector r(*this);
    for (auto& v : r.z_)
        v = -v;
    return r;
}

ShiftVector shift_sigma(std::size_t m, std::size_t i, int power)
{
    require(i < m, ErrorKind::Domain, "sigma index out of range");
    ShiftVector z(m);
    z[i] = power;
    return z;
}

ShiftVector shift_delta(std::size_t m, int power) { return ShiftVector(IntVec(m, power)); }

ShiftVector shift_delta_i(std::size_t m, std::size_t i, int power)
{
    require(i < m, ErrorKind::Domain, "delta_i index out of range");
    ShiftVector z = shift_delta(m, power);
    z[i] = 0;
    return z;
}

namespace {

void normalize(std::vector<Poly::Term>& terms)
{
    std::sort(terms.begin(), terms.end(),
              [](const Poly::Term& a, const Poly::Term& b) { return a.first < b.first; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i + 1;
        Rational c = terms[i].second;
        while (j < terms.size() && terms[j].first == terms[i].first)
            c += terms[j++].second;
        if (c != 0) {
            terms[out].first = std::move(terms[i].first);
            terms[out].second = std::move(c);
            ++out;
        }
        i = j;
    }
    terms.resize(out);
}

// Merge two sorted term lists with sign applied to the second.
std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b,
                              bool negate_b)
{
    std::vector<Poly::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, negate_b ? Rational(-b[j].second) : b[j].second);
            ++j;
        } else {
            Rational c = negate_b ? Rational(a[i].second - b[j].second) : Rational(a[i].second + b[j].second);
            if (c != 0)
                out.emplace_back(a[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return out;
}

void check_same(const Poly& a, const Poly& b)
{
    require(a.nvars() == b.nvars(), ErrorKind::Dimension, "polynomial ambient variable count mismatch");
}

} // namespace

Poly Poly::constant(std::size_t nvars, const Rational& c)
{
    Poly p(nvars);
    if (c != 0)
        p.terms_.emplace_back(Exponents(nvars, 0), c);
    return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i)
{
    require(i < nvars, ErrorKind::Domain, "variable index out of range");
    Exponents e(nvars, 0);
    e[i] = 1;
    return monomial(std::move(e), Rational(1));
}

Poly Poly::monomial(Exponents e, const Rational& c)
{
    Poly p(e.size());
    if (c != 0)
        p.terms_.emplace_back(std::move(e), c);
    return p;
}

Poly Poly::from_terms(std::size_t nvars, std::vector<Term> terms)
{
    for (const auto& t : terms)
        require(t.first.size() == nvars, ErrorKind::Dimension, "exponent vector length mismatch");
    normalize(terms);
    Poly p(nvars);
    p.terms_ = std::move(terms);
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

Rational Poly::constant_term() const { return coefficient(Exponents(nvars_, 0)); }

Rational Poly::coefficient(const Exponents& e) const
{
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, const Exponents& key) { return t.first < key; });
    if (it != terms_.end() && it->first == e)
        return it->second;
    return 0;
}

int Poly::total_degree() const
{
    int d = -1;
    for (const auto& t : terms_) {
        int s = 0;
        for (int v : t.first)
            s += v;
        d = std::max(d, s);
    }
    return d;
}

int Poly::degree_in(std::size_t var) const
{
    int d = -1;
    for (const auto& t : terms_)
        d = std::max(d, t.first[var]);
    return d;
}

bool Poly::only_involves(std::size_t var) const
{
    for (const auto& t : terms_)
        for (std::size_t j = 0; j < nvars_; ++j)
            if (j != var && t.first[j] != 0)
                return false;
    return true;
}

Poly& Poly::operator+=(const Poly& o)
{
    check_same(*this, o);
    if (o.terms_.empty())
        return *this;
    terms_ = merge(terms_, o.terms_, false);
    return *this;
}

Poly& Poly::operator-=(const Poly& o)
{
    check_same(*this, o);
    if (o.terms_.empty())
        return *this;
    terms_ = merge(terms_, o.terms_, true);
    return *this;
}

Poly& Poly::operator*=(const Poly& o)
{
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(const Rational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_)
        t.second *= c;
    return *this;
}

Poly Poly::operator-() const
{
    Poly r(*this);
    for (auto& t : r.terms_)
        t.second = -t.second;
    return r;
}

Poly Poly::times_monomial(const Exponents& e, const Rational& c) const
{
    Poly r(nvars_);
    if (c == 0)
        return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Exponents f = t.first;
        for (std::size_t j = 0; j < nvars_; ++j)
            f[j] += e[j];
        r.terms_.emplace_back(std::move(f), t.second * c);
    }
    return r;
}

Poly operator*(const Poly& a, const Poly& b)
{
    check_same(a, b);
    if (a.terms_.empty() || b.terms_.empty())
        return Poly(a.nvars_);
    if (a.terms_.size() == 1)
        return b.times_monomial(a.terms_[0].first, a.terms_[0].second);
    if (b.terms_.size() == 1)
        return a.times_monomial(b.terms_[0].first, b.terms_[0].second);
    std::vector<Poly::Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) {
            Exponents e = s.first;
            for (std::size_t j = 0; j < a.nvars_; ++j)
                e[j] += t.first[j];
            out.emplace_back(std::move(e), s.second * t.second);
        }
    normalize(out);
    Poly r(a.nvars_);
    r.terms_ = std::move(out);
    return r;
}

std::string Poly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Rational& c = it->second;
        bool is_unit_mono = true;
        for (int v : it->first)
            if (v)
                is_unit_mono = false;
        if (!first)
            os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0)
            os << "-";
        Rational ac = abs(c);
        if (ac != 1 || is_unit_mono)
            os << freesl::to_string(ac);
        bool need_star = ac != 1;
        for (std::size_t j = 0; j < it->first.size(); ++j) {
            if (!it->first[j])
                continue;
            os << (need_star ? "*" : "") << "h" << (j + 1);
            if (it->first[j] > 1)
                os << "^" << it->first[j];
            need_star = true;
        }
        first = false;
    }
    return os.str();
}

Poly poly_arith(const Poly& p, const Poly& q, PolyOp kind)
{
    check_same(p, q);
    switch (kind) {
    case PolyOp::Add:
        return p + q;
    case PolyOp::Sub:
        return p - q;
    case PolyOp::Mul:
        return p * q;
    }
    fail(ErrorKind::Internal, "unknown polynomial operation");
}

Poly shift_apply(const ShiftVector& z, const Poly& p)
{
    require(z.size() == p.nvars(), ErrorKind::Dimension, "shift vector does not match polynomial ring");
    if (z.is_zero() || p.is_zero())
        return p;
    const std::size_t m = p.nvars();
    std::vector<Poly::Term> out;
    std::vector<Poly::Term> partial, next;
    for (const auto& t : p.terms()) {
        partial.clear();
        partial.emplace_back(Exponents(m, 0), t.second);
        for (std::size_t j = 0; j < m; ++j) {
            const int e = t.first[j];
            if (e == 0)
                continue;
            if (z[j] == 0) {
                for (auto& q : partial)
                    q.first[j] = e;
                continue;
            }
            // (h_j - z_j)^e = sum_t C(e,t) h_j^t (-z_j)^(e-t)
            next.clear();
            const Rational neg_z(-z[j]);
            for (int s = 0; s <= e; ++s) {
                Integer binom;
                mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(s));
                Rational c = Rational(binom) * rational_pow(neg_z, e - s);
                for (const auto& q : partial) {
                    Exponents f = q.first;
                    f[j] = s;
                    next.emplace_back(std::move(f), q.second * c);
                }
            }
            partial.swap(next);
        }
        for (auto& q : partial)
            out.push_back(std::move(q));
    }
    return Poly::from_terms(m, std::move(out));
}

std::optional<Poly> exact_divide(const Poly& p, const Poly& q)
{
    check_same(p, q);
    require(!q.is_zero(), ErrorKind::DivisionByZero, "division by the zero polynomial");
    const std::size_t m = p.nvars();
    Poly rem = p;
    std::vector<Poly::Term> quot;
    const auto& lead_q = q.terms().back();
    while (!rem.is_zero()) {
        const auto& lead_r = rem.terms().back();
        Exponents e(m, 0);
        for (std::size_t j = 0; j < m; ++j) {
            e[j] = lead_r.first[j] - lead_q.first[j];
            if (e[j] < 0)
                return std::nullopt;
        }
        Rational c = lead_r.second / lead_q.second;
        rem -= q.times_monomial(e, c);
        quot.emplace_back(std::move(e), std::move(c));
    }
    return Poly::from_terms(m, std::move(quot));
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs))
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

UniPoly UniPoly::operator*(const UniPoly& o) const
{
    if (is_zero() || o.is_zero())
        return UniPoly();
    std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * o.coeffs_[j];
    return UniPoly(std::move(c));
}

Poly sum_of_variables(std::size_t m)
{
    Poly s(m);
    for (std::size_t j = 0; j < m; ++j)
        s += Poly::variable(m, j);
    return s;
}

Poly substitute_sum(const UniPoly& F, const Rational& offset, std::size_t m)
{
    const Poly x = sum_of_variables(m) + Poly::constant(m, offset);
    Poly acc(m);
    for (auto it = F.coeffs().rbegin(); it != F.coeffs().rend(); ++it)
        acc = acc * x + Poly::constant(m, *it);
    return acc;
}

} // namespace freesl
