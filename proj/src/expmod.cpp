#include "freesl/expmod.hpp"

#include "freesl/error.hpp"

#include <algorithm>
#include <numeric>

namespace freesl {

void ExpModuleSpec::validate() const
{
    require(m >= 1, ErrorKind::Domain, "spec needs m >= 1");
    require(a.size() == m && k.size() == m, ErrorKind::Domain, "spec lists a and k must have length m");
    for (const auto& x : a)
        require(x != 0, ErrorKind::Domain, "spec coefficients a_i must be nonzero");
    for (int x : k)
        require(x >= 1, ErrorKind::Domain, "spec exponents k_i must be positive");
    for (std::size_t i : S)
        require(i < m, ErrorKind::Domain, "spec parity set S out of range");
}

std::size_t ExpModuleSpec::K() const
{
    std::size_t p = 1;
    for (int x : k)
        p *= static_cast<std::size_t>(x);
    return p;
}

int ExpModuleSpec::s() const
{
    int g = 0;
    for (int x : k)
        g = std::gcd(g, x);
    return g;
}

std::size_t residue_index(const Residue& r, const std::vector<int>& k)
{
    require(r.size() == k.size(), ErrorKind::Dimension, "residue length mismatch");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        require(r[i] >= 0 && r[i] < k[i], ErrorKind::Domain, "residue component out of range");
        idx = idx * static_cast<std::size_t>(k[i]) + static_cast<std::size_t>(r[i]);
    }
    return idx;
}

Residue residue_at(std::size_t index, const std::vector<int>& k)
{
    Residue r(k.size(), 0);
    for (std::size_t i = k.size(); i-- > 0;) {
        r[i] = static_cast<int>(index % static_cast<std::size_t>(k[i]));
        index /= static_cast<std::size_t>(k[i]);
    }
    return r;
}

std::vector<Residue> all_residues(const std::vector<int>& k)
{
    std::size_t n = 1;
    for (int x : k)
        n *= static_cast<std::size_t>(x);
    std::vector<Residue> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(residue_at(i, k));
    return out;
}

Gpm block_U(const Rational& alpha, std::size_t nvars, std::size_t var, std::size_t i, std::size_t j)
{
    require(alpha != 0, ErrorKind::Domain, "block parameter alpha must be nonzero");
    require(i + j >= 1, ErrorKind::Domain, "block must be nonempty");
    Permutation perm(i + j);
    std::vector<GpmEntry> entries(i + j);
    for (std::size_t c = 0; c < i; ++c) {
        perm[c] = j + c;
        entries[c] = {Rational(1), 0};
    }
    for (std::size_t t = 0; t < j; ++t) {
        perm[i + t] = t;
        entries[i + t] = {Rational(1) / alpha, 1};
    }
    return Gpm(nvars, var, std::move(perm), std::move(entries));
}

Gpm block_V(const Rational& alpha, std::size_t nvars, std::size_t var, std::size_t i, std::size_t j)
{
    require(alpha != 0, ErrorKind::Domain, "block parameter alpha must be nonzero");
    require(i + j >= 1, ErrorKind::Domain, "block must be nonempty");
    Permutation perm(i + j);
    std::vector<GpmEntry> entries(i + j);
    for (std::size_t c = 0; c < i; ++c) {
        perm[c] = j + c;
        entries[c] = {alpha, 0};
    }
    for (std::size_t t = 0; t < j; ++t) {
        perm[i + t] = t;
        entries[i + t] = {Rational(-1), 1};
    }
    return Gpm(nvars, var, std::move(perm), std::move(entries));
}

namespace {

std::size_t product(const std::vector<int>& k, std::size_t from, std::size_t to)
{
    std::size_t p = 1;
    for (std::size_t j = from; j < to; ++j)
        p *= static_cast<std::size_t>(k[j]);
    return p;
}

Gpm uv_block(const ExpModuleSpec& spec, std::size_t i, std::size_t tail)
{
    const Rational alpha = spec.a[i] * spec.k[i];
    const std::size_t km1 = static_cast<std::size_t>(spec.k[i] - 1);
    if (spec.in_S(i))
        return block_V(alpha, spec.m, i, tail, km1 * tail);
    return block_U(alpha, spec.m, i, km1 * tail, tail);
}

Gpm repeated(const Gpm& block, std::size_t copies)
{
    return Gpm::block_diag(std::vector<Gpm>(copies, block));
}

} // namespace

FreeModule realize(const ExpModuleSpec& spec)
{
    spec.validate();
    std::vector<CompanionPair> pairs;
    for (std::size_t i = 0; i < spec.m; ++i) {
        Gpm a = repeated(uv_block(spec, i, product(spec.k, i + 1, spec.m)), product(spec.k, 0, i));
        pairs.push_back(make_pair_from(a));
    }
    return FreeModule(spec.m, std::move(pairs));
}

Permutation residue_perm(const ExpModuleSpec& spec, std::size_t i)
{
    require(i < spec.m, ErrorKind::Domain, "residue_perm index out of range");
    const std::size_t n = spec.K();
    const int step = spec.in_S(i) ? spec.k[i] - 1 : 1;
    Permutation p(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        Residue r = residue_at(idx, spec.k);
        r[i] = (r[i] + step) % spec.k[i];
        p[idx] = residue_index(r, spec.k);
    }
    return p;
}

long norm_S(const Residue& r, const std::set<std::size_t>& S)
{
    long total = 0;
    for (std::size_t i = 0; i < r.size(); ++i)
        total += S.count(i) ? -r[i] : r[i];
    return total;
}

namespace {

long mod_floor(long x, long s) { return ((x % s) + s) % s; }

} // namespace

OrbitPartition orbit_partition(const ExpModuleSpec& spec)
{
    spec.validate();
    OrbitPartition out;
    out.s = spec.s();
    const std::size_t n = spec.K();
    out.classes.assign(static_cast<std::size_t>(out.s), {});
    for (std::size_t idx = 0; idx < n; ++idx)
        out.classes[static_cast<std::size_t>(mod_floor(norm_S(residue_at(idx, spec.k), spec.S), out.s))].push_back(idx);

    std::vector<Permutation> perms, inverses;
    for (std::size_t i = 0; i < spec.m; ++i) {
        perms.push_back(residue_perm(spec, i));
        inverses.push_back(perm_inverse(perms.back()));
    }
    for (const auto& cls : out.classes) {
        std::vector<std::size_t> first;
        for (std::size_t i = 0; i < spec.m; ++i) {
            std::vector<std::size_t> img;
            for (std::size_t idx : cls)
                img.push_back(inverses[i][idx]);
            std::sort(img.begin(), img.end());
            if (i == 0)
                first = img;
            else
                require(img == first, ErrorKind::Internal, "shadow orbit class depends on the generator index");
        }
        out.shadow.push_back(std::move(first));
    }

    // Transitivity of <pi_i pi_{i+1}^{-1}> on each class.
    std::vector<Permutation> gens;
    for (std::size_t i = 0; i + 1 < spec.m; ++i) {
        gens.push_back(perm_compose(perms[i], inverses[i + 1]));
        gens.push_back(perm_inverse(gens.back()));
    }
    for (const auto& cls : out.classes) {
        if (cls.empty())
            continue;
        std::vector<bool> seen(n, false);
        std::vector<std::size_t> stack{cls.front()};
        seen[cls.front()] = true;
        std::size_t reached = 0;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            ++reached;
            for (const auto& g : gens)
                if (!seen[g[v]]) {
                    seen[g[v]] = true;
                    stack.push_back(g[v]);
                }
        }
        require(reached == cls.size(), ErrorKind::Internal, "difference subgroup is not transitive on an orbit class");
        for (std::size_t idx : cls)
            require(seen[idx], ErrorKind::Internal, "difference subgroup is not transitive on an orbit class");
    }
    return out;
}

FreeModule summand(const ExpModuleSpec& spec, int p)
{
    spec.validate();
    const int s = spec.s();
    require(p >= 0 && p < s, ErrorKind::Domain, "summand index out of range");
    if (s == 1)
        return realize(spec);
    const std::size_t m = spec.m;
    const std::size_t us = static_cast<std::size_t>(s);
    std::vector<CompanionPair> pairs;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        Gpm a = repeated(uv_block(spec, i, product(spec.k, i + 1, m) / us), product(spec.k, 0, i));
        pairs.push_back(make_pair_from(a));
    }
    const std::size_t last = m - 1;
    const Rational alpha = spec.a[last] * spec.k[last];
    const std::size_t block = static_cast<std::size_t>(spec.k[last]) / us;
    const std::vector<int> head(spec.k.begin(), spec.k.end() - 1);
    std::vector<Gpm> blocks;
    for (const Residue& r : all_residues(head)) {
        const long cls = mod_floor(norm_S(r, spec.S), s);
        if (!spec.in_S(last)) {
            if (cls == p)
                blocks.push_back(block_U(alpha, m, last, block - 1, 1));
            else
                blocks.push_back(Gpm(m, last, perm_identity(block), std::vector<GpmEntry>(block, {Rational(1), 0})));
        } else {
            if (cls == mod_floor(p - 1, s))
                blocks.push_back(block_V(alpha, m, last, 1, block - 1));
            else
                blocks.push_back(Gpm(m, last, perm_identity(block), std::vector<GpmEntry>(block, {Rational(-1), 1})));
        }
    }
    pairs.push_back(make_pair_from(Gpm::block_diag(blocks)));
    return FreeModule(m, std::move(pairs));
}

Poly annihilator_witness(const std::vector<int>& ell, std::size_t i, int b_i)
{
    require(i < ell.size(), ErrorKind::Domain, "annihilator index out of range");
    require(ell[i] == 0, ErrorKind::Domain, "annihilator witness needs a zero exponent at the chosen index");
    const std::size_t m = ell.size();
    const Poly h = Poly::variable(m, i);
    return (h - Poly::constant(m, b_i)) * (h + Poly::constant(m, b_i + 1));
}

} // namespace freesl
