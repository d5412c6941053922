#include "freesl/homsolver.hpp"

#include "freesl/error.hpp"
#include "freesl/linsolve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace freesl {

namespace {

void monomials_rec(std::size_t j, int remaining, Exponents& e, std::vector<Exponents>& out)
{
    if (j == e.size()) {
        out.push_back(e);
        return;
    }
    for (int v = 0; v <= remaining; ++v) {
        e[j] = v;
        monomials_rec(j + 1, remaining - v, e, out);
    }
    e[j] = 0;
}

// All exponent vectors of total degree <= degree, in lexicographic order.
std::vector<Exponents> monomials_up_to(std::size_t m, std::size_t degree)
{
    std::vector<Exponents> out;
    Exponents e(m, 0);
    monomials_rec(0, static_cast<int>(degree), e, out);
    return out;
}

struct Generator {
    PolyMatrix source; // action matrix on the source module
    PolyMatrix target; // action matrix on the target module
    ShiftVector shift;
};

// Unknown W is an n x n matrix whose allowed entries carry polynomials of degree <= D with
// unknown rational coefficients. Every equation reads W * E = F * shift(W).
class HomSystem {
public:
    HomSystem(std::size_t n, std::size_t m, std::size_t degree, std::vector<bool> allowed)
        : n_(n), m_(m), monos_(monomials_up_to(m, degree)), slot_(n * n, -1)
    {
        int next = 0;
        for (std::size_t i = 0; i < n * n; ++i)
            if (allowed[i])
                slot_[i] = next++;
        slots_ = static_cast<std::size_t>(next);
    }

    std::size_t unknowns() const { return slots_ * monos_.size(); }

    void add_generator(const Generator& g)
    {
        const PolyMatrix et = g.source.transpose();
        std::vector<Poly> shifted;
        for (const auto& a : monos_)
            shifted.push_back(shift_apply(g.shift, Poly::monomial(a, Rational(1))));
        for (std::size_t r = 0; r < n_; ++r)
            for (std::size_t c = 0; c < n_; ++c) {
                std::map<Exponents, std::map<std::size_t, Rational>> acc;
                for (const auto& [k, e] : et.row(c)) {
                    const int sl = slot_[r * n_ + k];
                    if (sl < 0)
                        continue;
                    for (std::size_t t = 0; t < monos_.size(); ++t) {
                        const Poly prod = e.times_monomial(monos_[t], Rational(1));
                        for (const auto& [beta, coef] : prod.terms())
                            acc[beta][uid(sl, t)] += coef;
                    }
                }
                for (const auto& [k, f] : g.target.row(r)) {
                    const int sl = slot_[k * n_ + c];
                    if (sl < 0)
                        continue;
                    for (std::size_t t = 0; t < monos_.size(); ++t) {
                        const Poly prod = f * shifted[t];
                        for (const auto& [beta, coef] : prod.terms())
                            acc[beta][uid(sl, t)] -= coef;
                    }
                }
                for (auto& [beta, row] : acc) {
                    SparseVec v;
                    for (auto& [u, q] : row)
                        if (q != 0)
                            v.emplace_back(u, std::move(q));
                    if (!v.empty())
                        rows_.push_back(std::move(v));
                }
            }
    }

    std::vector<PolyMatrix> solve() const
    {
        std::vector<PolyMatrix> out;
        std::vector<std::size_t> slot_pos(slots_);
        for (std::size_t i = 0; i < n_ * n_; ++i)
            if (slot_[i] >= 0)
                slot_pos[static_cast<std::size_t>(slot_[i])] = i;
        for (const SparseVec& v : sparse_nullspace(unknowns(), rows_)) {
            PolyMatrix w(n_, n_, m_);
            for (const auto& [u, q] : v) {
                const std::size_t pos = slot_pos[u / monos_.size()];
                w.add_to(pos / n_, pos % n_, Poly::monomial(monos_[u % monos_.size()], q));
            }
            out.push_back(std::move(w));
        }
        return out;
    }

private:
    std::size_t uid(int slot, std::size_t mono) const { return static_cast<std::size_t>(slot) * monos_.size() + mono; }

    std::size_t n_, m_;
    std::vector<Exponents> monos_;
    std::vector<int> slot_;
    std::size_t slots_ = 0;
    std::vector<SparseVec> rows_;
};

void check_same_shape(const FreeModule& a, const FreeModule& b)
{
    require(a.m() == b.m() && a.half_rank() == b.half_rank(), ErrorKind::Dimension,
            "homomorphism spaces need modules of equal rank and half-rank");
}

Generator generator(const FreeModule& src, const FreeModule& dst, std::size_t i, OddDirection dir)
{
    TwistedOperator a = op_e_odd(src, i, dir), b = op_e_odd(dst, i, dir);
    const auto& [z, ma] = *a.terms().begin();
    return Generator{ma, b.terms().begin()->second, z};
}

PolyMatrix block(const PolyMatrix& w, std::size_t r0, std::size_t c0, std::size_t size)
{
    std::vector<std::size_t> rows(size), cols(size);
    std::iota(rows.begin(), rows.end(), r0);
    std::iota(cols.begin(), cols.end(), c0);
    return w.submatrix(rows, cols);
}

} // namespace

HomBasis solve_hom(const FreeModule& source, const FreeModule& target, std::size_t degree)
{
    check_same_shape(source, target);
    const std::size_t l = source.half_rank(), n = 2 * l;
    std::vector<bool> allowed(n * n, false);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            allowed[r * n + c] = (r < l) == (c < l);
    HomSystem sys(n, source.m(), degree, allowed);
    for (std::size_t i = 0; i < source.m(); ++i)
        sys.add_generator(generator(source, target, i, OddDirection::Raise));
    HomBasis out;
    out.degree = degree;
    for (const PolyMatrix& w : sys.solve())
        out.basis.push_back({block(w, 0, 0, l), block(w, l, l, l)});
    return out;
}

FullHomResult solve_hom_full(const FreeModule& source, const FreeModule& target, std::size_t degree)
{
    check_same_shape(source, target);
    const std::size_t l = source.half_rank(), n = 2 * l;
    HomSystem sys(n, source.m(), degree, std::vector<bool>(n * n, true));
    for (std::size_t i = 0; i < source.m(); ++i) {
        sys.add_generator(generator(source, target, i, OddDirection::Raise));
        sys.add_generator(generator(source, target, i, OddDirection::Lower));
    }
    FullHomResult out;
    out.basis = sys.solve();
    for (const PolyMatrix& w : out.basis)
        if (!block(w, 0, l, l).is_zero() || !block(w, l, 0, l).is_zero())
            out.off_diagonal_zero = false;
    return out;
}

bool is_homomorphism(const FreeModule& source, const FreeModule& target, const HomElement& w)
{
    check_same_shape(source, target);
    for (std::size_t i = 0; i < source.m(); ++i) {
        const PolyMatrix lhs = w.even * source.pairs()[i].a.dense();
        const PolyMatrix rhs = target.pairs()[i].a.dense() * w.odd.shifted(shift_delta_i(source.m(), i, -1));
        if (lhs != rhs)
            return false;
    }
    return true;
}

std::optional<std::size_t> count_idempotents(const HomBasis& degree_zero)
{
    if (degree_zero.basis.empty())
        return 1;
    const std::size_t l = degree_zero.basis[0].even.rows();
    std::vector<std::vector<Rational>> vecs;
    for (const auto& e : degree_zero.basis) {
        std::vector<Rational> v(2 * l, Rational(0));
        for (std::size_t half = 0; half < 2; ++half) {
            const PolyMatrix& w = half == 0 ? e.even : e.odd;
            for (std::size_t r = 0; r < l; ++r)
                for (const auto& [c, p] : w.row(r)) {
                    require(p.is_constant(), ErrorKind::Domain, "idempotent count needs a degree-zero basis");
                    if (c != r)
                        return std::nullopt;
                    v[half * l + r] = p.constant_term();
                }
        }
        vecs.push_back(std::move(v));
    }
    // Positions on which every basis vector agrees can only be switched together.
    std::map<std::vector<Rational>, std::vector<std::size_t>> classes;
    for (std::size_t pos = 0; pos < 2 * l; ++pos) {
        std::vector<Rational> sig;
        for (const auto& v : vecs)
            sig.push_back(v[pos]);
        classes[sig].push_back(pos);
    }
    require(classes.size() <= 20, ErrorKind::Domain, "too many idempotent classes to enumerate");
    const std::size_t base_rank = dense_rank(vecs);
    std::vector<std::vector<std::size_t>> groups;
    for (auto& [sig, g] : classes)
        groups.push_back(g);
    std::size_t count = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << groups.size()); ++mask) {
        std::vector<Rational> t(2 * l, Rational(0));
        for (std::size_t g = 0; g < groups.size(); ++g)
            if (mask >> g & 1)
                for (std::size_t pos : groups[g])
                    t[pos] = 1;
        auto ext = vecs;
        ext.push_back(t);
        if (dense_rank(std::move(ext)) == base_rank)
            ++count;
    }
    return count;
}

EndProfile end_profile(const ExpModuleSpec& spec, std::size_t degree)
{
    const FreeModule mod = realize(spec);
    EndProfile p;
    p.s = static_cast<std::size_t>(spec.s());
    p.dim = solve_hom(mod, mod, degree).dim();
    p.idempotents = count_idempotents(solve_hom(mod, mod, 0));
    return p;
}

bool indecomposable(const ExpModuleSpec& spec)
{
    spec.validate();
    return spec.s() == 1;
}

namespace {

UniPoly first_variable_profile(const Poly& p)
{
    std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(p.total_degree(), 0)) + 1, Rational(0));
    for (const auto& [e, c] : p.terms()) {
        bool pure = true;
        for (std::size_t j = 1; j < e.size(); ++j)
            pure = pure && e[j] == 0;
        if (pure)
            coeffs[static_cast<std::size_t>(e[0])] += c;
    }
    return UniPoly(std::move(coeffs));
}

} // namespace

std::optional<Rational> fitted_odd_offset(const ExpModuleSpec& spec, const HomBasis& end_basis)
{
    const FreeModule mod = realize(spec);
    const std::size_t m = spec.m;
    std::optional<Rational> offset;
    for (const auto& e : end_basis.basis) {
        const Gpm& a = mod.pairs()[0].a;
        for (std::size_t c = 0; c < a.size(); ++c) {
            const std::size_t r = a.perm()[c];
            for (const auto& [col, p] : e.even.row(r))
                require(col == r, ErrorKind::Internal, "endomorphism even block is not diagonal");
            for (const auto& [col, p] : e.odd.row(c))
                require(col == c, ErrorKind::Internal, "endomorphism odd block is not diagonal");
            const Poly w = e.even.get(r, r), v = e.odd.get(c, c);
            const UniPoly F = first_variable_profile(w);
            require(substitute_sum(F, 0, m) == w, ErrorKind::Internal, "even-block entry is not a polynomial in sum h_j");
            if (F.degree() < 1) {
                require(v == w, ErrorKind::Internal, "constant even-block entry paired with a different odd-block entry");
                continue;
            }
            const UniPoly G = first_variable_profile(v);
            const int d = F.degree();
            require(G.degree() == d, ErrorKind::Internal, "odd-block entry degree differs from the even-block entry");
            const auto& fc = F.coeffs();
            const auto& gc = G.coeffs();
            Rational c_fit = (gc[d - 1] - fc[d - 1]) / (fc[d] * d);
            require(substitute_sum(F, c_fit, m) == v, ErrorKind::Internal, "odd-block entry is not a shift of the even-block entry");
            require(!offset || *offset == c_fit, ErrorKind::Internal, "odd-block offset differs between entries");
            offset = c_fit;
        }
    }
    return offset;
}

std::vector<std::vector<long>> relation_lattice(const std::vector<int>& k)
{
    const std::size_t m = k.size();
    std::vector<long> v(k.begin(), k.end());
    std::vector<std::vector<long>> cols(m, std::vector<long>(m, 0));
    for (std::size_t i = 0; i < m; ++i)
        cols[i][i] = 1;
    while (true) {
        std::size_t piv = m;
        std::size_t nonzero = 0;
        for (std::size_t i = 0; i < m; ++i)
            if (v[i] != 0) {
                ++nonzero;
                if (piv == m || std::labs(v[i]) < std::labs(v[piv]))
                    piv = i;
            }
        if (nonzero <= 1) {
            std::vector<std::vector<long>> basis;
            for (std::size_t i = 0; i < m; ++i)
                if (v[i] == 0)
                    basis.push_back(cols[i]);
            return basis;
        }
        for (std::size_t j = 0; j < m; ++j) {
            if (j == piv || v[j] == 0)
                continue;
            const long q = v[j] / v[piv];
            v[j] -= q * v[piv];
            for (std::size_t t = 0; t < m; ++t)
                cols[j][t] -= q * cols[piv][t];
        }
    }
}

bool wps_equiv(const std::vector<Rational>& r, const std::vector<int>& k)
{
    require(r.size() == k.size(), ErrorKind::Dimension, "weights and coordinates differ in length");
    for (const auto& x : r)
        require(x != 0, ErrorKind::Domain, "weighted projective coordinates must be nonzero");
    for (const auto& c : relation_lattice(k)) {
        Rational prod = 1;
        for (std::size_t i = 0; i < r.size(); ++i)
            prod *= rational_pow(r[i], c[i]);
        if (prod != 1)
            return false;
    }
    return true;
}

std::vector<Rational> gk_act(const GkElement& g, const std::vector<Rational>& a)
{
    require(a.size() == g.k.size(), ErrorKind::Dimension, "G_k element and coordinates differ in length");
    std::vector<Rational> out = a;
    for (std::size_t i : g.support) {
        require(i < g.k.size() && g.k[i] == 2, ErrorKind::Domain, "G_k support must lie where k_i = 2");
        require(a[i] != 0, ErrorKind::Domain, "G_k acts on nonzero coordinates");
        out[i] = Rational(-1) / (4 * a[i]);
    }
    return out;
}

std::vector<Rational> s_twist(const std::vector<Rational>& a, const std::set<std::size_t>& S)
{
    std::vector<Rational> out = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        require(a[i] != 0, ErrorKind::Domain, "twist of a zero coordinate");
        if (!S.count(i))
            out[i] = Rational(1) / a[i];
    }
    return out;
}

bool iso_sl11(const ExpModuleSpec& x, const ExpModuleSpec& y)
{
    require(x.m == 1 && y.m == 1, ErrorKind::Domain, "iso_sl11 needs m = 1");
    return x.k == y.k && (x.S == y.S || x.k[0] == 2);
}

IsoVerdict iso_exp(const ExpModuleSpec& x, const ExpModuleSpec& y)
{
    x.validate();
    y.validate();
    require(x.m == y.m, ErrorKind::Dimension, "isomorphism test needs equal m");
    IsoVerdict out;
    if (x.m == 1) {
        out.isomorphic = iso_sl11(x, y);
        if (out.isomorphic) {
            std::set<std::size_t> sup;
            if (x.S != y.S)
                sup.insert(0);
            out.witness_support = sup;
        }
        return out;
    }
    if (x.k != y.k)
        return out;
    std::set<std::size_t> sym;
    std::set_symmetric_difference(x.S.begin(), x.S.end(), y.S.begin(), y.S.end(), std::inserter(sym, sym.end()));
    for (std::size_t i : sym)
        if (x.k[i] != 2)
            return out;
    const GkElement g{x.k, sym};
    const auto lhs = s_twist(gk_act(g, x.a), y.S);
    const auto rhs = s_twist(y.a, y.S);
    std::vector<Rational> ratio(x.m);
    for (std::size_t i = 0; i < x.m; ++i)
        ratio[i] = lhs[i] / rhs[i];
    out.isomorphic = wps_equiv(ratio, x.k);
    if (out.isomorphic)
        out.witness_support = sym;
    return out;
}

namespace {

HomElement combine(const HomBasis& basis, const std::vector<Rational>& coeffs)
{
    const std::size_t l = basis.basis[0].even.rows(), m = basis.basis[0].even.nvars();
    HomElement acc{PolyMatrix(l, l, m), PolyMatrix(l, l, m)};
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
        if (coeffs[t] == 0)
            continue;
        acc.even += basis.basis[t].even.scaled(coeffs[t]);
        acc.odd += basis.basis[t].odd.scaled(coeffs[t]);
    }
    return acc;
}

bool unit_det(const PolyMatrix& w)
{
    const Poly d = determinant(w);
    return !d.is_zero() && d.is_constant();
}

std::optional<HomElement> sample_units(const HomBasis& basis, std::uint64_t seed, std::size_t samples)
{
    if (basis.basis.empty())
        return std::nullopt;
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + basis.degree);
    std::uniform_int_distribution<int> coef(-3, 3);
    std::bernoulli_distribution keep(0.75);
    for (std::size_t s = 0; s < samples; ++s) {
        std::vector<Rational> c(basis.dim(), Rational(0));
        bool any = false;
        for (auto& x : c) {
            if (!keep(rng))
                continue;
            int v = coef(rng);
            x = v;
            any = any || v != 0;
        }
        if (!any)
            continue;
        HomElement w = combine(basis, c);
        if (unit_det(w.even) && unit_det(w.odd))
            return w;
    }
    return std::nullopt;
}

} // namespace

bool unit_combination_exists(const FreeModule& source, const FreeModule& target, std::size_t degree,
                             std::uint64_t seed, std::size_t samples)
{
    return sample_units(solve_hom(source, target, degree), seed, samples).has_value();
}

std::optional<IsoWitness> iso_generic(const FreeModule& source, const FreeModule& target, std::size_t max_degree,
                                      std::uint64_t seed, std::size_t samples_per_degree)
{
    check_same_shape(source, target);
    for (std::size_t d = 0; d <= max_degree; ++d) {
        const HomBasis forward = solve_hom(source, target, d);
        if (forward.basis.empty())
            continue;
        if (solve_hom(target, source, d).basis.empty())
            continue;
        if (auto w = sample_units(forward, seed, samples_per_degree))
            return IsoWitness{d, std::move(*w)};
    }
    return std::nullopt;
}

Classification classify(const std::vector<ExpModuleSpec>& specs)
{
    Classification out;
    if (specs.empty())
        return out;
    for (const auto& s : specs) {
        s.validate();
        require(s.m == specs[0].m && s.k == specs[0].k, ErrorKind::Domain, "classify needs specs sharing m and k");
    }
    std::vector<std::size_t> parent(specs.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x];
        return x;
    };
    for (std::size_t i = 0; i < specs.size(); ++i)
        for (std::size_t j = i + 1; j < specs.size(); ++j)
            if (root(i) != root(j) && iso_exp(specs[i], specs[j]).isomorphic)
                parent[root(j)] = root(i);
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < specs.size(); ++i)
        groups[root(i)].push_back(i);
    for (auto& [r, g] : groups)
        out.classes.push_back(g);
    for (const auto& s : specs) {
        GkElement g{s.k, {}};
        ExpModuleSpec c = s;
        for (std::size_t i : s.S)
            if (s.k[i] == 2) {
                g.support.insert(i);
                c.S.erase(i);
            }
        c.a = gk_act(g, s.a);
        out.canonical.push_back(std::move(c));
    }
    return out;
}

} // namespace freesl
