#pragma once

// Independent reference computations used to cross-check the library. These deliberately avoid
// the library's solvers and orbit machinery and use plain dense or brute-force methods.

#include "freesl/expmod.hpp"
#include "freesl/superfree.hpp"

#include <doctest.h>

#include <deque>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using freesl::Rational;

inline std::size_t dense_rank(std::vector<std::vector<Rational>> a)
{
    std::size_t rank = 0;
    const std::size_t cols = a.empty() ? 0 : a[0].size();
    for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0)
            ++piv;
        if (piv == a.size())
            continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == rank || a[r][c] == 0)
                continue;
            const Rational f = a[r][c] / a[rank][c];
            for (std::size_t t = c; t < cols; ++t)
                a[r][t] -= f * a[rank][t];
        }
        ++rank;
    }
    return rank;
}

inline std::vector<freesl::Exponents> monomials(std::size_t m, int degree)
{
    std::vector<freesl::Exponents> out;
    freesl::Exponents e(m, 0);
    // odometer over the box [0, degree]^m, filtered by total degree
    while (true) {
        int total = 0;
        for (int v : e)
            total += v;
        if (total <= degree)
            out.push_back(e);
        std::size_t j = 0;
        while (j < m && e[j] == degree)
            e[j++] = 0;
        if (j == m)
            break;
        ++e[j];
    }
    return out;
}

// dim of {(E, O) : E A_i = B_i Delta_i^{-1}(O) for all i}, entries of degree <= D, via a dense
// system assembled one unknown at a time from full matrix products.
inline std::size_t hom_dimension(const freesl::FreeModule& src, const freesl::FreeModule& dst, int degree)
{
    using namespace freesl;
    const std::size_t l = src.half_rank(), m = src.m();
    const auto monos = monomials(m, degree);
    std::map<std::tuple<std::size_t, std::size_t, std::size_t, Exponents>, std::size_t> eq_index;
    std::vector<std::map<std::size_t, Rational>> columns;
    for (int block = 0; block < 2; ++block)
        for (std::size_t r = 0; r < l; ++r)
            for (std::size_t c = 0; c < l; ++c)
                for (const auto& mono : monos) {
                    PolyMatrix even(l, l, m), odd(l, l, m);
                    (block == 0 ? even : odd).set(r, c, Poly::monomial(mono, Rational(1)));
                    std::map<std::size_t, Rational> col;
                    for (std::size_t i = 0; i < m; ++i) {
                        const PolyMatrix res = even * src.pairs()[i].a.dense() -
                                               dst.pairs()[i].a.dense() * odd.shifted(shift_delta_i(m, i, -1));
                        for (std::size_t rr = 0; rr < l; ++rr)
                            for (const auto& [cc, p] : res.row(rr))
                                for (const auto& [e, q] : p.terms()) {
                                    auto key = std::make_tuple(i, rr, cc, e);
                                    auto it = eq_index.try_emplace(key, eq_index.size()).first;
                                    col[it->second] += q;
                                }
                    }
                    columns.push_back(std::move(col));
                }
    std::vector<std::vector<Rational>> dense(eq_index.size(), std::vector<Rational>(columns.size(), Rational(0)));
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [r, q] : columns[c])
            dense[r][c] = q;
    return columns.size() - dense_rank(dense);
}

using Tuple = std::vector<int>;

inline std::vector<Tuple> residues(const std::vector<int>& k)
{
    std::vector<Tuple> out;
    Tuple r(k.size(), 0);
    while (true) {
        out.push_back(r);
        std::size_t j = k.size();
        while (j > 0) {
            --j;
            if (++r[j] < k[j])
                break;
            r[j] = 0;
            if (j == 0)
                return out;
        }
        if (k.empty())
            return out;
    }
}

// Orbits of residues under the differences step_i - step_j of the coordinate steps
// (+1 in coordinate i when i is outside S, -1 inside).
inline std::set<std::set<Tuple>> difference_orbits(const std::vector<int>& k, const std::set<std::size_t>& S)
{
    const std::size_t m = k.size();
    auto step = [&](Tuple r, std::size_t i, int dir) {
        const int d = S.count(i) ? -dir : dir;
        r[i] = ((r[i] + d) % k[i] + k[i]) % k[i];
        return r;
    };
    std::set<std::set<Tuple>> orbits;
    std::set<Tuple> seen;
    for (const Tuple& start : residues(k)) {
        if (seen.count(start))
            continue;
        std::set<Tuple> orbit{start};
        std::deque<Tuple> queue{start};
        while (!queue.empty()) {
            const Tuple r = queue.front();
            queue.pop_front();
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) {
                    if (i == j)
                        continue;
                    const Tuple t = step(step(r, j, -1), i, +1);
                    if (orbit.insert(t).second)
                        queue.push_back(t);
                }
        }
        seen.insert(orbit.begin(), orbit.end());
        orbits.insert(orbit);
    }
    return orbits;
}

inline Rational random_rational(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    int n = 0;
    while (n == 0)
        n = num(rng);
    Rational q(n, den(rng));
    q.canonicalize();
    return q;
}

inline freesl::Poly random_poly(std::mt19937_64& rng, std::size_t m, int degree, int terms)
{
    std::vector<freesl::Poly::Term> t;
    std::uniform_int_distribution<int> d(0, degree);
    for (int n = 0; n < terms; ++n) {
        freesl::Exponents e(m, 0);
        int budget = degree;
        for (std::size_t j = 0; j < m; ++j) {
            std::uniform_int_distribution<int> part(0, budget);
            e[j] = part(rng);
            budget -= e[j];
        }
        t.emplace_back(e, random_rational(rng));
    }
    return freesl::Poly::from_terms(m, t);
}

// Random companion-admissible GPM of size n in variable var.
inline freesl::Gpm random_gpm(std::mt19937_64& rng, std::size_t nvars, std::size_t var, std::size_t n)
{
    freesl::Permutation perm(n);
    for (std::size_t j = 0; j < n; ++j)
        perm[j] = j;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<freesl::GpmEntry> entries;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t j = 0; j < n; ++j)
        entries.push_back({random_rational(rng), coin(rng) ? 1 : 0});
    return freesl::Gpm(nvars, var, perm, entries);
}

inline std::vector<freesl::ExpModuleSpec> grid(std::size_t max_m)
{
    std::vector<freesl::ExpModuleSpec> out;
    for (std::size_t m = 1; m <= max_m; ++m)
        for (const auto& k : residues(std::vector<int>(m, 3))) {
            std::vector<int> kk(m);
            for (std::size_t i = 0; i < m; ++i)
                kk[i] = k[i] + 1;
            for (int mask = 0; mask < (1 << m); ++mask)
                for (int variant = 0; variant < 2; ++variant) {
                    freesl::ExpModuleSpec s;
                    s.m = m;
                    s.k = kk;
                    for (std::size_t i = 0; i < m; ++i) {
                        if (mask & (1 << i))
                            s.S.insert(i);
                        if (variant == 0)
                            s.a.push_back(Rational(1));
                        else
                            s.a.push_back(i == 0 ? Rational(2) : (i == 1 ? Rational(-3, 2) : Rational(5, 7)));
                    }
                    out.push_back(s);
                }
        }
    return out;
}

} // namespace oracle

namespace doctest {
template <>
struct StringMaker<freesl::Poly> {
    static String convert(const freesl::Poly& p) { return p.to_string().c_str(); }
};
template <>
struct StringMaker<freesl::Rational> {
    static String convert(const freesl::Rational& q) { return q.get_str().c_str(); }
};
} // namespace doctest
