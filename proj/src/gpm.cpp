#include "freesl/gpm.hpp"

#include "freesl/error.hpp"

#include <sstream>

namespace freesl {

Permutation perm_identity(std::size_t n)
{
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = i;
    return p;
}

bool perm_is_valid(const Permutation& p)
{
    std::vector<bool> seen(p.size(), false);
    for (std::size_t v : p) {
        if (v >= p.size() || seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

Permutation perm_inverse(const Permutation& p)
{
    Permutation inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        inv[p[i]] = i;
    return inv;
}

Permutation perm_compose(const Permutation& outer, const Permutation& inner)
{
    require(outer.size() == inner.size(), ErrorKind::Dimension, "permutation size mismatch");
    Permutation r(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i)
        r[i] = outer[inner[i]];
    return r;
}

std::string perm_cycles(const Permutation& p)
{
    std::ostringstream os;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t start = 0; start < p.size(); ++start) {
        if (seen[start] || p[start] == start)
            continue;
        os << "(";
        std::size_t i = start;
        bool first = true;
        while (!seen[i]) {
            seen[i] = true;
            os << (first ? "" : " ") << (i + 1);
            first = false;
            i = p[i];
        }
        os << ")";
    }
    std::string s = os.str();
    return s.empty() ? "()" : s;
}

GpmFactorization gpm_factor(const PolyMatrix& a)
{
    require(a.rows() == a.cols(), ErrorKind::NotGpm, "generalized permutation matrix must be square");
    const std::size_t n = a.rows();
    GpmFactorization f;
    f.perm.assign(n, n);
    f.diag.assign(n, Poly(a.nvars()));
    std::vector<std::size_t> col_count(n, 0);
    for (std::size_t r = 0; r < n; ++r) {
        if (a.row(r).size() != 1)
            fail(ErrorKind::NotGpm, "row " + std::to_string(r + 1) + " does not have exactly one nonzero entry");
        const auto& [c, v] = *a.row(r).begin();
        if (++col_count[c] > 1)
            fail(ErrorKind::NotGpm, "column " + std::to_string(c + 1) + " has more than one nonzero entry");
        f.perm[c] = r;
        f.diag[c] = v;
    }
    return f;
}

Gpm::Gpm(std::size_t nvars, std::size_t var, Permutation perm, std::vector<GpmEntry> entries)
    : nvars_(nvars), var_(var), perm_(std::move(perm)), entries_(std::move(entries))
{
    require(var_ < nvars_, ErrorKind::Domain, "GPM variable index out of range");
    require(!perm_.empty(), ErrorKind::Domain, "GPM must have positive size");
    require(perm_is_valid(perm_), ErrorKind::NotGpm, "GPM permutation is not a bijection");
    require(entries_.size() == perm_.size(), ErrorKind::Dimension, "GPM entry count does not match size");
    for (const auto& e : entries_) {
        require(e.coef != 0, ErrorKind::NotGpm, "GPM entry must be nonzero");
        require(e.deg == 0 || e.deg == 1, ErrorKind::NoCompanion, "GPM entry degree must be 0 or 1");
    }
}

Gpm Gpm::from_dense(const PolyMatrix& a, std::size_t var)
{
    GpmFactorization f = gpm_factor(a);
    std::vector<GpmEntry> entries;
    entries.reserve(f.diag.size());
    for (const Poly& d : f.diag) {
        const bool single_term = d.terms().size() == 1;
        const int deg = d.total_degree();
        if (!single_term || !d.only_involves(var) || deg > 1)
            fail(ErrorKind::NoCompanion, "entry " + d.to_string() + " is neither a scalar nor a scalar times h" +
                                             std::to_string(var + 1));
        entries.push_back({d.terms()[0].second, deg});
    }
    return Gpm(a.nvars(), var, std::move(f.perm), std::move(entries));
}

Gpm Gpm::block_diag(const std::vector<Gpm>& blocks)
{
    require(!blocks.empty(), ErrorKind::Domain, "block_diag of an empty list");
    Permutation perm;
    std::vector<GpmEntry> entries;
    std::size_t offset = 0;
    for (const auto& b : blocks) {
        require(b.var_ == blocks[0].var_ && b.nvars_ == blocks[0].nvars_, ErrorKind::Dimension,
                "GPM blocks use different variables");
        for (std::size_t j = 0; j < b.size(); ++j) {
            perm.push_back(b.perm_[j] + offset);
            entries.push_back(b.entries_[j]);
        }
        offset += b.size();
    }
    return Gpm(blocks[0].nvars_, blocks[0].var_, std::move(perm), std::move(entries));
}

Poly Gpm::entry_poly(std::size_t col) const
{
    const GpmEntry& e = entries_.at(col);
    if (e.deg == 0)
        return Poly::constant(nvars_, e.coef);
    return Poly::variable(nvars_, var_) * e.coef;
}

PolyMatrix Gpm::dense() const
{
    PolyMatrix m(size(), size(), nvars_);
    for (std::size_t j = 0; j < size(); ++j)
        m.set(perm_[j], j, entry_poly(j));
    return m;
}

Gpm Gpm::transpose() const
{
    Permutation inv = perm_inverse(perm_);
    std::vector<GpmEntry> entries(size());
    for (std::size_t j = 0; j < size(); ++j)
        entries[perm_[j]] = entries_[j];
    return Gpm(nvars_, var_, std::move(inv), std::move(entries));
}

Gpm Gpm::restrict(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const
{
    require(row_idx.size() == col_idx.size(), ErrorKind::Dimension, "restriction needs equally many rows and columns");
    std::vector<std::size_t> row_pos(size(), size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
        row_pos.at(row_idx[i]) = i;
    Permutation perm(col_idx.size());
    std::vector<GpmEntry> entries(col_idx.size());
    for (std::size_t t = 0; t < col_idx.size(); ++t) {
        const std::size_t r = perm_.at(col_idx[t]);
        require(row_pos[r] < size(), ErrorKind::Domain, "restriction index sets are not matched by the permutation");
        perm[t] = row_pos[r];
        entries[t] = entries_[col_idx[t]];
    }
    return Gpm(nvars_, var_, std::move(perm), std::move(entries));
}

bool Gpm::operator==(const Gpm& o) const
{
    return nvars_ == o.nvars_ && var_ == o.var_ && perm_ == o.perm_ && entries_ == o.entries_;
}

Gpm companion(const Gpm& a)
{
    // Entry d at (perm[j], j) becomes h/d at (j, perm[j]).
    Permutation inv = perm_inverse(a.perm());
    std::vector<GpmEntry> entries(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        const GpmEntry& e = a.entries()[j];
        entries[a.perm()[j]] = GpmEntry{Rational(1) / e.coef, 1 - e.deg};
    }
    return Gpm(a.nvars(), a.var(), std::move(inv), std::move(entries));
}

Gpm companion(const PolyMatrix& a, std::size_t var) { return companion(Gpm::from_dense(a, var)); }

CompanionPair make_pair_from(const Gpm& a) { return CompanionPair{a, companion(a)}; }

bool verify_companion(const CompanionPair& pair)
{
    if (pair.a.size() != pair.acomp.size() || pair.a.var() != pair.acomp.var() ||
        pair.a.nvars() != pair.acomp.nvars())
        return false;
    const PolyMatrix target = PolyMatrix::scalar(pair.a.size(), Poly::variable(pair.a.nvars(), pair.a.var()));
    const PolyMatrix a = pair.a.dense(), b = pair.acomp.dense();
    return a * b == target && b * a == target;
}

} // namespace freesl
