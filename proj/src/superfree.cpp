#include "freesl/superfree.hpp"

#include "freesl/error.hpp"

#include <algorithm>
#include <numeric>

namespace freesl {

TwistedOperator::TwistedOperator(Parity parity, std::size_t dim, std::size_t nvars)
    : parity_(parity), dim_(dim), nvars_(nvars)
{
}

TwistedOperator TwistedOperator::single(Parity parity, const PolyMatrix& mat, const ShiftVector& z)
{
    TwistedOperator op(parity, mat.rows(), mat.nvars());
    op.add_term(z, mat);
    return op;
}

void TwistedOperator::add_term(const ShiftVector& z, const PolyMatrix& mat)
{
    require(mat.rows() == dim_ && mat.cols() == dim_ && mat.nvars() == nvars_ && z.size() == nvars_,
            ErrorKind::Dimension, "twisted operator term has the wrong shape");
    if (mat.is_zero())
        return;
    auto it = terms_.find(z);
    if (it == terms_.end()) {
        terms_.emplace(z, mat);
        return;
    }
    it->second += mat;
    if (it->second.is_zero())
        terms_.erase(it);
}

std::size_t TwistedOperator::nonzero_entries() const
{
    std::size_t n = 0;
    for (const auto& [z, mat] : terms_)
        n += mat.nonzeros();
    return n;
}

bool TwistedOperator::has_parity_shape() const
{
    const std::size_t half = dim_ / 2;
    for (const auto& [z, mat] : terms_)
        for (std::size_t r = 0; r < dim_; ++r)
            for (const auto& entry : mat.row(r)) {
                const bool same_half = (r < half) == (entry.first < half);
                if (same_half != (parity_ == Parity::Even))
                    return false;
            }
    return true;
}

void TwistedOperator::check_compatible(const TwistedOperator& o) const
{
    require(dim_ == o.dim_ && nvars_ == o.nvars_, ErrorKind::Dimension, "twisted operators act on different spaces");
}

TwistedOperator& TwistedOperator::operator+=(const TwistedOperator& o)
{
    check_compatible(o);
    require(parity_ == o.parity_ || o.is_zero() || is_zero(), ErrorKind::Domain,
            "sum of twisted operators of different parity");
    if (is_zero())
        parity_ = o.parity_;
    for (const auto& [z, mat] : o.terms_)
        add_term(z, mat);
    return *this;
}

TwistedOperator& TwistedOperator::operator-=(const TwistedOperator& o) { return *this += o.scaled(Rational(-1)); }

TwistedOperator TwistedOperator::scaled(const Rational& c) const
{
    TwistedOperator r(parity_, dim_, nvars_);
    if (c == 0)
        return r;
    for (const auto& [z, mat] : terms_)
        r.terms_.emplace(z, mat.scaled(c));
    return r;
}

std::vector<Poly> TwistedOperator::apply(const std::vector<Poly>& v) const
{
    require(v.size() == dim_, ErrorKind::Dimension, "vector length does not match operator");
    std::vector<Poly> out(dim_, Poly(nvars_));
    for (const auto& [z, mat] : terms_) {
        std::vector<Poly> sv(dim_);
        for (std::size_t c = 0; c < dim_; ++c)
            sv[c] = shift_apply(z, v[c]);
        for (std::size_t r = 0; r < dim_; ++r)
            for (const auto& [c, x] : mat.row(r))
                out[r] += x * sv[c];
    }
    return out;
}

bool TwistedOperator::operator==(const TwistedOperator& o) const
{
    if (is_zero() && o.is_zero())
        return dim_ == o.dim_ && nvars_ == o.nvars_;
    return parity_ == o.parity_ && dim_ == o.dim_ && nvars_ == o.nvars_ && terms_ == o.terms_;
}

TwistedOperator compose(const TwistedOperator& p, const TwistedOperator& q)
{
    require(p.dim() == q.dim() && p.nvars() == q.nvars(), ErrorKind::Dimension, "composition of mismatched operators");
    TwistedOperator r(p.parity() + q.parity(), p.dim(), p.nvars());
    for (const auto& [z, m] : p.terms())
        for (const auto& [w, n] : q.terms())
            r.add_term(z + w, m * n.shifted(z));
    return r;
}

TwistedOperator super_bracket(const TwistedOperator& p, const TwistedOperator& q)
{
    TwistedOperator pq = compose(p, q);
    TwistedOperator qp = compose(q, p);
    if (p.parity() == Parity::Odd && q.parity() == Parity::Odd)
        return pq + qp;
    return pq - qp;
}

std::string LieBasisElement::name() const
{
    const std::string a = std::to_string(i + 1);
    switch (kind) {
    case Kind::H:
        return "h" + a;
    case Kind::E:
        return "e" + a + "," + std::to_string(j + 1);
    case Kind::Raise:
        return "e" + a + ",1bar";
    case Kind::Lower:
        return "e1bar," + a;
    }
    return "?";
}

std::vector<LieBasisElement> lie_basis(std::size_t m)
{
    std::vector<LieBasisElement> out;
    for (std::size_t i = 0; i < m; ++i)
        out.push_back(LieBasisElement::h(i));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (i != j)
                out.push_back(LieBasisElement::e(i, j));
    for (std::size_t i = 0; i < m; ++i)
        out.push_back(LieBasisElement::raise(i));
    for (std::size_t i = 0; i < m; ++i)
        out.push_back(LieBasisElement::lower(i));
    return out;
}

namespace {

// Matrix units E_{IJ} of gl(m|1); index m is the odd slot.
using UnitCombo = std::map<std::pair<std::size_t, std::size_t>, Rational>;

UnitCombo to_units(const LieBasisElement& x, std::size_t m)
{
    switch (x.kind) {
    case LieBasisElement::Kind::H:
        return {{{x.i, x.i}, Rational(1)}, {{m, m}, Rational(1)}};
    case LieBasisElement::Kind::E:
        return {{{x.i, x.j}, Rational(1)}};
    case LieBasisElement::Kind::Raise:
        return {{{x.i, m}, Rational(1)}};
    case LieBasisElement::Kind::Lower:
        return {{{m, x.i}, Rational(1)}};
    }
    return {};
}

} // namespace

LieCombo gl_bracket(const LieBasisElement& x, const LieBasisElement& y, std::size_t m)
{
    auto check = [m](const LieBasisElement& b) {
        require(b.i < m && (b.kind != LieBasisElement::Kind::E || (b.j < m && b.j != b.i)), ErrorKind::Domain,
                "invalid sl(m|1) basis element");
    };
    check(x);
    check(y);
    auto par = [m](std::size_t a) { return a == m ? 1 : 0; };
    UnitCombo acc;
    for (const auto& [ij, c1] : to_units(x, m))
        for (const auto& [kl, c2] : to_units(y, m)) {
            const auto [I, J] = ij;
            const auto [K, L] = kl;
            const int sign_exp = ((par(I) + par(J)) * (par(K) + par(L))) & 1;
            if (J == K)
                acc[{I, L}] += c1 * c2;
            if (L == I)
                acc[{K, J}] -= (sign_exp ? Rational(-1) : Rational(1)) * c1 * c2;
        }
    LieCombo out;
    Rational odd_diag = 0, h_total = 0;
    for (const auto& [ij, c] : acc) {
        if (c == 0)
            continue;
        const auto [I, J] = ij;
        if (I == J && I == m) {
            odd_diag = c;
        } else if (I == J) {
            out[LieBasisElement::h(I)] += c;
            h_total += c;
        } else if (J == m) {
            out[LieBasisElement::raise(I)] += c;
        } else if (I == m) {
            out[LieBasisElement::lower(J)] += c;
        } else {
            out[LieBasisElement::e(I, J)] += c;
        }
    }
    require(h_total == odd_diag, ErrorKind::Internal, "bracket leaves the span of the sl(m|1) spanning set");
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

FreeModule::FreeModule(std::size_t m, std::vector<CompanionPair> pairs) : m_(m), pairs_(std::move(pairs))
{
    require(m_ >= 1, ErrorKind::Domain, "module needs m >= 1");
    require(pairs_.size() == m_, ErrorKind::Dimension, "module needs exactly m companion pairs");
    l_ = pairs_[0].a.size();
    for (std::size_t i = 0; i < m_; ++i) {
        const auto& p = pairs_[i];
        require(p.a.size() == l_ && p.acomp.size() == l_, ErrorKind::Dimension, "companion pairs differ in size");
        require(p.a.nvars() == m_ && p.acomp.nvars() == m_, ErrorKind::Dimension, "companion pair ring mismatch");
        require(p.a.var() == i && p.acomp.var() == i, ErrorKind::Domain,
                "companion pair " + std::to_string(i + 1) + " must use variable h" + std::to_string(i + 1));
    }
}

FreeModule rank_one_module(const std::vector<Rational>& b, const std::set<std::size_t>& T)
{
    const std::size_t m = b.size();
    std::vector<CompanionPair> pairs;
    for (std::size_t i = 0; i < m; ++i) {
        require(b[i] != 0, ErrorKind::Domain, "rank (1|1) parameters must be nonzero");
        pairs.push_back(make_pair_from(Gpm(m, i, {0}, {GpmEntry{b[i], T.count(i) ? 1 : 0}})));
    }
    return FreeModule(m, std::move(pairs));
}

TwistedOperator op_h(const FreeModule& mod, std::size_t i)
{
    require(i < mod.m(), ErrorKind::Domain, "generator index out of range");
    const std::size_t n = 2 * mod.half_rank();
    return TwistedOperator::single(Parity::Even, PolyMatrix::scalar(n, Poly::variable(mod.m(), i)),
                                   ShiftVector(mod.m()));
}

TwistedOperator op_e_odd(const FreeModule& mod, std::size_t i, OddDirection dir)
{
    require(i < mod.m(), ErrorKind::Domain, "generator index out of range");
    const std::size_t l = mod.half_rank();
    PolyMatrix mat(2 * l, 2 * l, mod.m());
    if (dir == OddDirection::Raise) {
        mat.place(mod.pairs()[i].a.dense(), 0, l);
        return TwistedOperator::single(Parity::Odd, mat, shift_delta_i(mod.m(), i, -1));
    }
    mat.place(mod.pairs()[i].acomp.dense(), l, 0);
    return TwistedOperator::single(Parity::Odd, mat, shift_delta_i(mod.m(), i, 1));
}

TwistedOperator op_e_even(const FreeModule& mod, std::size_t i, std::size_t j)
{
    require(i != j, ErrorKind::Domain, "e_ii is not a basis element; use h_i");
    return super_bracket(op_e_odd(mod, i, OddDirection::Raise), op_e_odd(mod, j, OddDirection::Lower));
}

TwistedOperator op_of(const FreeModule& mod, const LieBasisElement& x)
{
    switch (x.kind) {
    case LieBasisElement::Kind::H:
        return op_h(mod, x.i);
    case LieBasisElement::Kind::E:
        return op_e_even(mod, x.i, x.j);
    case LieBasisElement::Kind::Raise:
        return op_e_odd(mod, x.i, OddDirection::Raise);
    case LieBasisElement::Kind::Lower:
        return op_e_odd(mod, x.i, OddDirection::Lower);
    }
    fail(ErrorKind::Internal, "unknown basis element kind");
}

RelationReport verify_relations(const FreeModule& mod)
{
    const std::size_t m = mod.m();
    const auto basis = lie_basis(m);
    std::map<LieBasisElement, TwistedOperator> ops;
    for (const auto& x : basis)
        ops.emplace(x, op_of(mod, x));

    RelationReport report;
    for (const auto& x : basis)
        for (const auto& y : basis) {
            ++report.checked;
            TwistedOperator residual = super_bracket(ops.at(x), ops.at(y));
            for (const auto& [z, c] : gl_bracket(x, y, m))
                residual -= ops.at(z).scaled(c);
            if (!residual.is_zero())
                report.failed.push_back({x, y, residual.nonzero_entries()});
        }
    return report;
}

FreeModule dual(const FreeModule& mod)
{
    std::vector<CompanionPair> pairs;
    pairs.reserve(mod.m());
    for (const auto& p : mod.pairs())
        pairs.push_back(CompanionPair{p.acomp.transpose(), p.a.transpose()});
    return FreeModule(mod.m(), std::move(pairs));
}

namespace {

struct DisjointSets {
    explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::size_t> parent;
};

} // namespace

std::vector<OrbitComponent> orbit_split(const FreeModule& mod)
{
    const std::size_t l = mod.half_rank();
    // Nodes 0..l-1 are even labels, l..2l-1 odd labels.
    DisjointSets sets(2 * l);
    for (const auto& p : mod.pairs())
        for (std::size_t c = 0; c < l; ++c)
            sets.unite(p.a.perm()[c], l + c);

    std::map<std::size_t, OrbitComponent> by_root;
    for (std::size_t v = 0; v < 2 * l; ++v) {
        auto& comp = by_root[sets.find(v)];
        (v < l ? comp.even_labels : comp.odd_labels).push_back(v < l ? v : v - l);
    }
    std::vector<OrbitComponent> out;
    for (auto& [root, comp] : by_root) {
        require(comp.even_labels.size() == comp.odd_labels.size(), ErrorKind::Internal,
                "orbit component has unbalanced parity halves");
        std::vector<CompanionPair> pairs;
        for (const auto& p : mod.pairs())
            pairs.push_back(CompanionPair{p.a.restrict(comp.even_labels, comp.odd_labels),
                                          p.acomp.restrict(comp.odd_labels, comp.even_labels)});
        comp.module = FreeModule(mod.m(), std::move(pairs));
        out.push_back(std::move(comp));
    }
    std::sort(out.begin(), out.end(),
              [](const OrbitComponent& a, const OrbitComponent& b) { return a.even_labels < b.even_labels; });
    return out;
}

FreeModule reassemble(std::size_t m, std::size_t half_rank, const std::vector<OrbitComponent>& parts)
{
    std::vector<Permutation> perm_a(m, Permutation(half_rank, half_rank)), perm_c(m, Permutation(half_rank, half_rank));
    std::vector<std::vector<GpmEntry>> ent_a(m, std::vector<GpmEntry>(half_rank)), ent_c(m, std::vector<GpmEntry>(half_rank));
    for (const auto& part : parts) {
        require(part.module.m() == m, ErrorKind::Dimension, "component module has the wrong rank");
        for (std::size_t i = 0; i < m; ++i) {
            const Gpm& a = part.module.pairs()[i].a;
            const Gpm& c = part.module.pairs()[i].acomp;
            for (std::size_t t = 0; t < a.size(); ++t) {
                perm_a[i].at(part.odd_labels.at(t)) = part.even_labels.at(a.perm()[t]);
                ent_a[i][part.odd_labels[t]] = a.entries()[t];
                perm_c[i].at(part.even_labels.at(t)) = part.odd_labels.at(c.perm()[t]);
                ent_c[i][part.even_labels[t]] = c.entries()[t];
            }
        }
    }
    std::vector<CompanionPair> pairs;
    for (std::size_t i = 0; i < m; ++i)
        pairs.push_back(CompanionPair{Gpm(m, i, perm_a[i], ent_a[i]), Gpm(m, i, perm_c[i], ent_c[i])});
    return FreeModule(m, std::move(pairs));
}

bool filtration_member_check(const FreeModule& mod, const UniPoly& F)
{
    const std::size_t m = mod.m();
    const std::size_t l = mod.half_rank();
    const Poly even_factor = substitute_sum(F, Rational(static_cast<long>(m) - 1), m);
    const Poly odd_factor = substitute_sum(F, Rational(0), m);
    if (even_factor.is_zero())
        return true; // M_0 = 0
    std::vector<TwistedOperator> gens;
    for (std::size_t i = 0; i < m; ++i) {
        gens.push_back(op_h(mod, i));
        gens.push_back(op_e_odd(mod, i, OddDirection::Raise));
        gens.push_back(op_e_odd(mod, i, OddDirection::Lower));
    }
    for (const auto& g : gens)
        for (std::size_t c = 0; c < 2 * l; ++c) {
            std::vector<Poly> v(2 * l, Poly(m));
            v[c] = c < l ? even_factor : odd_factor;
            const std::vector<Poly> w = g.apply(v);
            for (std::size_t r = 0; r < 2 * l; ++r)
                if (!exact_divide(w[r], r < l ? even_factor : odd_factor))
                    return false;
        }
    return true;
}

} // namespace freesl
