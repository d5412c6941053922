#include "freesl/weylsim.hpp"

#include "freesl/error.hpp"
#include "freesl/homsolver.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace freesl {

namespace {

using K = DiffFactor::Kind;

DiffFactor X(std::size_t i) { return {K::MulX, i}; }
DiffFactor D(std::size_t i) { return {K::D, i}; }
DiffFactor Xi() { return {K::Xi, 0}; }
DiffFactor DXi() { return {K::DXi, 0}; }

DiffTerm term(long c, std::vector<DiffFactor> w) { return DiffTerm{Rational(c), std::move(w)}; }

} // namespace

std::string to_string(const DiffOp& op)
{
    std::ostringstream os;
    bool first = true;
    for (const auto& t : op) {
        if (!first)
            os << (sgn(t.coef) < 0 ? " - " : " + ");
        else if (sgn(t.coef) < 0)
            os << "-";
        first = false;
        const Rational c = abs(t.coef);
        bool star = false;
        if (c != 1 || t.word.empty()) {
            os << to_string(c);
            star = true;
        }
        for (const auto& f : t.word) {
            os << (star ? "*" : "");
            star = true;
            switch (f.kind) {
            case K::MulX:
                os << "x" << f.var + 1;
                break;
            case K::D:
                os << "d" << f.var + 1;
                break;
            case K::Xi:
                os << "xi";
                break;
            case K::DXi:
                os << "dxi";
                break;
            }
        }
    }
    return first ? "0" : os.str();
}

DiffOp phi_image(const LieBasisElement& x, const std::set<std::size_t>& S)
{
    const bool si = S.count(x.i) != 0;
    switch (x.kind) {
    case LieBasisElement::Kind::H:
        if (!si)
            return {term(1, {X(x.i), D(x.i)}), term(1, {Xi(), DXi()})};
        return {term(-1, {X(x.i), D(x.i)}), term(-1, {}), term(1, {Xi(), DXi()})};
    case LieBasisElement::Kind::E: {
        const bool sj = S.count(x.j) != 0;
        if (!si && !sj)
            return {term(1, {X(x.i), D(x.j)})};
        if (si && !sj)
            return {term(1, {D(x.i), D(x.j)})};
        if (!si && sj)
            return {term(-1, {X(x.i), X(x.j)})};
        return {term(-1, {X(x.j), D(x.i)})};
    }
    case LieBasisElement::Kind::Raise:
        if (!si)
            return {term(1, {X(x.i), DXi()})};
        return {term(1, {D(x.i), DXi()})};
    case LieBasisElement::Kind::Lower:
        if (!si)
            return {term(1, {Xi(), D(x.i)})};
        return {term(-1, {X(x.i), Xi()})};
    }
    fail(ErrorKind::Internal, "unknown basis element kind");
}

PhiTable phi_table(std::size_t m, const std::set<std::size_t>& S)
{
    PhiTable t;
    for (const auto& x : lie_basis(m))
        t.emplace(x, phi_image(x, S));
    return t;
}

Poly differentiate(const Poly& p, std::size_t var)
{
    std::vector<Poly::Term> out;
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0)
            continue;
        Exponents f = e;
        --f[var];
        out.emplace_back(std::move(f), c * e[var]);
    }
    return Poly::from_terms(p.nvars(), std::move(out));
}

Poly g_from_spec(const ExpModuleSpec& spec)
{
    std::vector<Poly::Term> terms;
    for (std::size_t i = 0; i < spec.m; ++i) {
        Exponents e(spec.m, 0);
        e[i] = spec.k[i];
        terms.emplace_back(std::move(e), spec.a[i]);
    }
    return Poly::from_terms(spec.m, std::move(terms));
}

TwistedWeyl::TwistedWeyl(Poly g) : g_(std::move(g))
{
    for (std::size_t i = 0; i < g_.nvars(); ++i)
        grad_.push_back(differentiate(g_, i));
}

WeylElement TwistedWeyl::apply(const DiffOp& op, const WeylElement& v) const
{
    const std::size_t m = g_.nvars();
    WeylElement acc{Poly(m), Poly(m)};
    for (const auto& t : op) {
        WeylElement cur = v;
        for (auto it = t.word.rbegin(); it != t.word.rend(); ++it) {
            switch (it->kind) {
            case K::MulX: {
                const Poly x = Poly::variable(m, it->var);
                cur.even *= x;
                cur.odd *= x;
                break;
            }
            case K::D:
                cur.even = differentiate(cur.even, it->var) + cur.even * grad_[it->var];
                cur.odd = differentiate(cur.odd, it->var) + cur.odd * grad_[it->var];
                break;
            case K::Xi:
                cur = WeylElement{Poly(m), cur.even};
                break;
            case K::DXi:
                cur = WeylElement{cur.odd, Poly(m)};
                break;
            }
        }
        acc.even += cur.even * t.coef;
        acc.odd += cur.odd * t.coef;
    }
    return acc;
}

int TwistedWeyl::degree_raise(const DiffOp& op) const
{
    int best = 0;
    for (const auto& t : op) {
        int raise = 0;
        for (const auto& f : t.word) {
            if (f.kind == K::MulX)
                raise += 1;
            else if (f.kind == K::D)
                raise += std::max(grad_[f.var].total_degree(), 0);
        }
        best = std::max(best, raise);
    }
    return best;
}

TruncatedBasis::TruncatedBasis(std::size_t m, std::size_t N) : m_(m), N_(N)
{
    std::vector<Exponents> monos;
    Exponents e(m, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int remaining) {
        if (j == m) {
            monos.push_back(e);
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            e[j] = v;
            rec(j + 1, remaining - v);
        }
        e[j] = 0;
    };
    rec(0, static_cast<int>(N));
    for (int eps = 0; eps < 2; ++eps)
        for (const auto& b : monos) {
            index_.emplace(std::make_pair(eps, b), elems_.size());
            elems_.emplace_back(eps, b);
        }
}

std::size_t TruncatedBasis::index_of(int eps, const Exponents& b) const
{
    auto it = index_.find({eps, b});
    return it == index_.end() ? elems_.size() : it->second;
}

WeylElement TruncatedBasis::element(std::size_t idx) const
{
    const auto& [eps, b] = elems_.at(idx);
    WeylElement v{Poly(m_), Poly(m_)};
    (eps == 0 ? v.even : v.odd) = Poly::monomial(b, Rational(1));
    return v;
}

bool TruncatedBasis::coordinates(const WeylElement& v, SparseVec& out) const
{
    out.clear();
    for (int eps = 0; eps < 2; ++eps)
        for (const auto& [b, c] : (eps == 0 ? v.even : v.odd).terms()) {
            const std::size_t idx = index_of(eps, b);
            if (idx == elems_.size())
                return false;
            out.emplace_back(idx, c);
        }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return true;
}

TruncAction build_action(const TwistedWeyl& weyl, const TruncatedBasis& basis, const DiffOp& op)
{
    TruncAction act;
    act.columns.resize(basis.size());
    act.valid.resize(basis.size());
    for (std::size_t idx = 0; idx < basis.size(); ++idx)
        act.valid[idx] = basis.coordinates(weyl.apply(op, basis.element(idx)), act.columns[idx]);
    return act;
}

namespace {

std::optional<SparseVec> apply_action(const TruncAction& act, const SparseVec& v)
{
    std::map<std::size_t, Rational> acc;
    for (const auto& [c, x] : v) {
        if (!act.valid[c])
            return std::nullopt;
        for (const auto& [r, y] : act.columns[c])
            acc[r] += x * y;
    }
    SparseVec out;
    for (auto& [r, q] : acc)
        if (q != 0)
            out.emplace_back(r, std::move(q));
    return out;
}

int basis_degree(const Exponents& b)
{
    int d = 0;
    for (int v : b)
        d += v;
    return d;
}

} // namespace

TruncReport relation_check_truncated(const Poly& g, const std::set<std::size_t>& S, std::size_t N,
                                     const PhiTable* table)
{
    const std::size_t m = g.nvars();
    const PhiTable own = phi_table(m, S);
    const PhiTable& phi = table ? *table : own;
    const TwistedWeyl weyl(g);
    TruncReport report;
    for (const auto& [x, op] : phi)
        report.delta_max = std::max(report.delta_max, weyl.degree_raise(op));
    if (N < static_cast<std::size_t>(2 * report.delta_max))
        fail(ErrorKind::GuardBand, "truncation " + std::to_string(N) + " is below the guard band " +
                                       std::to_string(2 * report.delta_max));
    const TruncatedBasis basis(m, N);
    report.basis_size = basis.size();
    const int guard_limit = static_cast<int>(N) - 2 * report.delta_max;

    const auto elems = lie_basis(m);
    std::map<LieBasisElement, TruncAction> acts;
    for (const auto& x : elems)
        acts.emplace(x, build_action(weyl, basis, phi.at(x)));

    std::vector<bool> vector_ok(basis.size(), true);
    for (std::size_t idx = 0; idx < basis.size(); ++idx)
        if (basis_degree(basis.at(idx).second) <= guard_limit)
            ++report.guard_vectors;

    for (const auto& x : elems)
        for (const auto& y : elems) {
            const LieCombo rhs = gl_bracket(x, y, m);
            const int sign = (x.parity() == Parity::Odd && y.parity() == Parity::Odd) ? 1 : -1;
            TruncFailure fail_entry{x, y, 0};
            for (std::size_t idx = 0; idx < basis.size(); ++idx) {
                const bool in_guard = basis_degree(basis.at(idx).second) <= guard_limit;
                const SparseVec v{{idx, Rational(1)}};
                auto yv = apply_action(acts.at(y), v);
                auto xv = apply_action(acts.at(x), v);
                std::optional<SparseVec> xyv, yxv;
                if (yv)
                    xyv = apply_action(acts.at(x), *yv);
                if (xv)
                    yxv = apply_action(acts.at(y), *xv);
                bool valid = xyv && yxv;
                SparseVec residual;
                if (valid) {
                    residual = sparse_axpy(*xyv, Rational(sign), *yxv);
                    for (const auto& [z, c] : rhs) {
                        auto zv = apply_action(acts.at(z), v);
                        if (!zv) {
                            valid = false;
                            break;
                        }
                        residual = sparse_axpy(residual, -c, *zv);
                    }
                }
                if (!valid) {
                    vector_ok[idx] = false;
                    if (in_guard)
                        ++report.audit_violations;
                    continue;
                }
                ++report.relation_checks;
                if (!residual.empty())
                    ++fail_entry.failing_vectors;
            }
            if (fail_entry.failing_vectors)
                report.failed.push_back(fail_entry);
        }
    report.checked_vectors = static_cast<std::size_t>(std::count(vector_ok.begin(), vector_ok.end(), true));
    return report;
}

bool intertwines(const TwistedWeyl& weyl, const PhiTable& table, const FreeModule& target, const BasisImage& theta,
                 std::size_t N)
{
    const std::size_t m = weyl.m();
    require(target.m() == m, ErrorKind::Dimension, "intertwiner target has the wrong rank");
    int delta = 0;
    for (const auto& [x, op] : table)
        delta = std::max(delta, weyl.degree_raise(op));
    const TruncatedBasis basis(m, N > static_cast<std::size_t>(delta) ? N - static_cast<std::size_t>(delta) : 0);
    const std::size_t dim = 2 * target.half_rank();
    auto image = [&](const WeylElement& w) {
        std::vector<Poly> acc(dim, Poly(m));
        for (int eps = 0; eps < 2; ++eps)
            for (const auto& [b, c] : (eps == 0 ? w.even : w.odd).terms()) {
                const auto part = theta(eps, b);
                for (std::size_t r = 0; r < dim; ++r)
                    acc[r] += part[r] * c;
            }
        return acc;
    };
    for (const auto& [x, op] : table) {
        const TwistedOperator act = op_of(target, x);
        for (std::size_t idx = 0; idx < basis.size(); ++idx) {
            const auto& [eps, b] = basis.at(idx);
            if (image(weyl.apply(op, basis.element(idx))) != act.apply(theta(eps, b)))
                return false;
        }
    }
    return true;
}

namespace {

Poly falling(const Poly& x, int n)
{
    Poly acc = Poly::constant(x.nvars(), 1);
    for (int t = 0; t < n; ++t)
        acc *= x - Poly::constant(x.nvars(), t);
    return acc;
}

Poly rising(const Poly& x, int n)
{
    Poly acc = Poly::constant(x.nvars(), 1);
    for (int t = 0; t < n; ++t)
        acc *= x + Poly::constant(x.nvars(), t);
    return acc;
}

} // namespace

bool theta_check(const std::vector<Rational>& a, const std::set<std::size_t>& S, std::size_t N, bool corrupt_v_sign)
{
    const std::size_t m = a.size();
    require(m >= 1, ErrorKind::Domain, "theta_check needs m >= 1");
    std::vector<Poly::Term> lin;
    for (std::size_t i = 0; i < m; ++i) {
        Exponents e(m, 0);
        e[i] = 1;
        lin.emplace_back(std::move(e), a[i]);
    }
    const TwistedWeyl weyl(Poly::from_terms(m, std::move(lin)));

    std::set<std::size_t> complement;
    for (std::size_t i = 0; i < m; ++i)
        if (!S.count(i))
            complement.insert(i);
    const FreeModule target = rank_one_module(s_twist(a, S), complement);

    auto theta = [&](int eps, const Exponents& b) {
        Poly acc = Poly::constant(m, 1);
        for (std::size_t i = 0; i < m; ++i) {
            const Poly h = Poly::variable(m, i);
            const Poly one = Poly::constant(m, 1);
            if (!S.count(i)) {
                acc *= (eps == 0 ? falling(h, b[i]) : falling(h - one, b[i])) * rational_pow(a[i], -b[i]);
            } else {
                acc *= (eps == 0 ? rising(h + one, b[i]) : rising(h, b[i])) * rational_pow(Rational(-1) / a[i], b[i]);
            }
        }
        if (eps == 1 && corrupt_v_sign)
            acc = -acc;
        std::vector<Poly> v(2, Poly(m));
        v[static_cast<std::size_t>(eps)] = acc;
        return v;
    };
    return intertwines(weyl, phi_table(m, S), target, theta, N);
}

bool phi_sl11_check(const Rational& a, int k, const std::set<std::size_t>& S, std::size_t N)
{
    require(k >= 1 && a != 0, ErrorKind::Domain, "phi_sl11_check needs k >= 1 and a != 0");
    ExpModuleSpec spec{1, {a}, {k}, S};
    spec.validate();
    const FreeModule target = realize(spec);
    const TwistedWeyl weyl(g_from_spec(spec));
    const bool flipped = !S.empty();
    const Rational ak = a * k;
    auto theta = [&](int eps, const Exponents& b) {
        const int n = b[0], ell = n / k, p = n % k;
        const Poly h = Poly::variable(1, 0);
        Poly acc = Poly::constant(1, rational_pow(ak, -ell) * (flipped && ell % 2 ? -1 : 1));
        for (int j = 0; j < ell; ++j) {
            int shift;
            if (!flipped)
                shift = -(p + k * j) - eps;
            else
                shift = p + 1 + j * k - eps;
            acc *= h + Poly::constant(1, shift);
        }
        std::vector<Poly> v(2 * static_cast<std::size_t>(k), Poly(1));
        v[static_cast<std::size_t>(eps * k + p)] = acc;
        return v;
    };
    return intertwines(weyl, phi_table(1, S), target, theta, N);
}

CensusReport uh_free_census(const ExpModuleSpec& spec, std::size_t N)
{
    spec.validate();
    const std::size_t m = spec.m;
    const TwistedWeyl weyl(g_from_spec(spec));
    const PhiTable phi = phi_table(m, spec.S);
    CensusReport report;
    for (int eps = 0; eps < 2; ++eps)
        for (const Residue& r : all_residues(spec.k)) {
            CensusClass cls{r, eps, 0, 0, true};
            // Class monomials r + k*alpha with |r + k alpha| <= N, indexed by alpha.
            std::vector<Exponents> alphas;
            Exponents alpha(m, 0);
            std::function<void(std::size_t, int)> rec = [&](std::size_t j, int budget) {
                if (j == m) {
                    alphas.push_back(alpha);
                    return;
                }
                for (int v = 0; v * spec.k[j] <= budget; ++v) {
                    alpha[j] = v;
                    rec(j + 1, budget - v * spec.k[j]);
                }
                alpha[j] = 0;
            };
            int start = 0;
            for (int v : r)
                start += v;
            if (start <= static_cast<int>(N))
                rec(0, static_cast<int>(N) - start);
            cls.class_size = alphas.size();
            std::map<Exponents, std::size_t> col;
            for (std::size_t t = 0; t < alphas.size(); ++t) {
                Exponents b = r;
                for (std::size_t j = 0; j < m; ++j)
                    b[j] += spec.k[j] * alphas[t][j];
                col.emplace(b, t);
            }
            // h^alpha applied to x^r xi^eps e^g, built incrementally from a smaller alpha.
            std::map<Exponents, WeylElement> images;
            WeylElement base{Poly(m), Poly(m)};
            (eps == 0 ? base.even : base.odd) = Poly::monomial(r, Rational(1));
            std::vector<std::vector<Rational>> rows;
            for (const auto& al : alphas) {
                WeylElement w;
                std::size_t j = 0;
                while (j < m && al[j] == 0)
                    ++j;
                if (j == m) {
                    w = base;
                } else {
                    Exponents prev = al;
                    --prev[j];
                    w = weyl.apply(phi.at(LieBasisElement::h(j)), images.at(prev));
                }
                std::vector<Rational> row(alphas.size(), Rational(0));
                if (!(eps == 0 ? w.odd : w.even).is_zero())
                    cls.closed = false;
                for (const auto& [b, c] : (eps == 0 ? w.even : w.odd).terms()) {
                    auto it = col.find(b);
                    if (it == col.end())
                        cls.closed = false;
                    else
                        row[it->second] = c;
                }
                rows.push_back(std::move(row));
                images.emplace(al, std::move(w));
            }
            cls.span_rank = dense_rank(std::move(rows));
            if (!cls.closed || cls.span_rank != cls.class_size)
                report.recovered = false;
            (eps == 0 ? report.even_classes : report.odd_classes) += 1;
            report.classes.push_back(std::move(cls));
        }
    return report;
}

bool annihilator_kills(const Rational& alpha, const std::vector<int>& ell, const std::set<std::size_t>& S,
                       std::size_t i, std::size_t N)
{
    const std::size_t m = ell.size();
    require(alpha != 0, ErrorKind::Domain, "monomial coefficient must be nonzero");
    Exponents e(ell.begin(), ell.end());
    const TwistedWeyl weyl(Poly::monomial(e, alpha));
    const DiffOp hi = phi_image(LieBasisElement::h(i), S);
    const TruncatedBasis basis(m, N);
    for (std::size_t idx = 0; idx < basis.size(); ++idx) {
        const auto& [eps, b] = basis.at(idx);
        if (eps != 0)
            continue;
        const Poly w = annihilator_witness(ell, i, b[i]);
        // Horner in the operator h_i.
        const int deg = w.degree_in(i);
        WeylElement acc{Poly(m), Poly(m)};
        const WeylElement v = basis.element(idx);
        for (int d = deg; d >= 0; --d) {
            acc = weyl.apply(hi, acc);
            Exponents mono(m, 0);
            mono[i] = d;
            const Rational c = w.coefficient(mono);
            acc.even += v.even * c;
            acc.odd += v.odd * c;
        }
        if (!acc.even.is_zero() || !acc.odd.is_zero())
            return false;
    }
    return true;
}

} // namespace freesl
