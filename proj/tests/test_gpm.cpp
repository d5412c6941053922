#include "freesl/error.hpp"
#include "freesl/expmod.hpp"
#include "freesl/gpm.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace freesl;

namespace {

Poly h(std::size_t m, std::size_t i) { return Poly::variable(m, i); }
Poly c(std::size_t m, const Rational& v) { return Poly::constant(m, v); }

void check_error(const std::function<void()>& fn, ErrorKind kind)
{
    try {
        fn();
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == kind);
    }
}

} // namespace

TEST_CASE("gpm_factor on the 4x4 example")
{
    // entries u_j = j + x, placed so that column 2 -> row 4, 3 -> 2, 4 -> 3
    PolyMatrix a(4, 4, 1);
    std::vector<Poly> u;
    for (int j = 1; j <= 4; ++j)
        u.push_back(h(1, 0) + c(1, Rational(j)));
    a.set(0, 0, u[0]);
    a.set(1, 2, u[2]);
    a.set(2, 3, u[3]);
    a.set(3, 1, u[1]);
    const GpmFactorization f = gpm_factor(a);
    CHECK(perm_cycles(f.perm) == "(2 4 3)");
    CHECK(f.diag == u);
}

TEST_CASE("gpm_factor trivial cases and errors")
{
    const GpmFactorization id = gpm_factor(PolyMatrix::identity(3, 1));
    CHECK(id.perm == perm_identity(3));
    for (const Poly& d : id.diag)
        CHECK(d == c(1, Rational(1)));
    PolyMatrix one(1, 1, 1);
    one.set(0, 0, h(1, 0) * Rational(5));
    CHECK(gpm_factor(one).diag[0] == h(1, 0) * Rational(5));

    PolyMatrix bad = PolyMatrix::identity(2, 1);
    bad.set(0, 1, c(1, Rational(1)));
    check_error([&] { gpm_factor(bad); }, ErrorKind::NotGpm);
    PolyMatrix empty_row(2, 2, 1);
    empty_row.set(0, 0, c(1, Rational(1)));
    check_error([&] { gpm_factor(empty_row); }, ErrorKind::NotGpm);
}

TEST_CASE("companion of the 3x3 example")
{
    const Rational a1(2), a2(-3), a3(5, 4);
    const std::size_t var = 1;
    PolyMatrix a(3, 3, 2);
    a.set(0, 0, c(2, a1));
    a.set(1, 2, h(2, var) * a2);
    a.set(2, 1, h(2, var) * a3);
    PolyMatrix expected(3, 3, 2);
    expected.set(0, 0, h(2, var) * (1 / a1));
    expected.set(1, 2, c(2, 1 / a3));
    expected.set(2, 1, c(2, 1 / a2));
    const Gpm comp = companion(a, var);
    CHECK(comp.dense() == expected);
    CHECK(verify_companion({Gpm::from_dense(a, var), comp}));
}

TEST_CASE("companion scalar case and inadmissible entries")
{
    PolyMatrix a(1, 1, 1);
    a.set(0, 0, c(1, Rational(3)));
    PolyMatrix expect(1, 1, 1);
    expect.set(0, 0, h(1, 0) * Rational(1, 3));
    CHECK(companion(a, 0).dense() == expect);

    PolyMatrix shifted(1, 1, 1);
    shifted.set(0, 0, (h(1, 0) + c(1, Rational(1))) * Rational(2));
    check_error([&] { companion(shifted, 0); }, ErrorKind::NoCompanion);
    PolyMatrix quad(1, 1, 1);
    quad.set(0, 0, h(1, 0) * h(1, 0));
    check_error([&] { companion(quad, 0); }, ErrorKind::NoCompanion);
    PolyMatrix other_var(1, 1, 2);
    other_var.set(0, 0, h(2, 1));
    check_error([&] { companion(other_var, 0); }, ErrorKind::NoCompanion);
}

TEST_CASE("U block times its companion")
{
    const Gpm u = block_U(Rational(2), 1, 0, 2, 1);
    const PolyMatrix prod = u.dense() * companion(u).dense();
    // independent expectation: h_1 on the diagonal, nothing else
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t col = 0; col < 3; ++col)
            CHECK(prod.get(r, col) == (r == col ? h(1, 0) : Poly(1)));
}

TEST_CASE("verify_companion rejects non-pairs")
{
    const Gpm a(1, 0, {0}, {{Rational(2), 0}});
    CHECK_FALSE(verify_companion({a, a}));
    CHECK(verify_companion(make_pair_from(a)));
}

TEST_CASE("companion properties on random GPMs")
{
    std::mt19937_64 rng(2024);
    for (int n = 0; n < 100; ++n) {
        const std::size_t size = 1 + static_cast<std::size_t>(n % 5), nvars = 1 + static_cast<std::size_t>(n % 3);
        const std::size_t var = static_cast<std::size_t>(n) % nvars;
        const Gpm a = oracle::random_gpm(rng, nvars, var, size);
        const Gpm b = companion(a);
        CHECK(companion(b) == a);
        CHECK(b.perm() == perm_inverse(a.perm()));
        CHECK(verify_companion({a, b}));
        // det(A) det(A^comp) = det(A A^comp) = h^size
        Poly hl = c(nvars, Rational(1));
        for (std::size_t j = 0; j < size; ++j)
            hl = hl * h(nvars, var);
        CHECK(determinant(a.dense()) * determinant(b.dense()) == hl);
        CHECK(gpm_factor(a.dense()).perm == a.perm());
    }
}

TEST_CASE("permutation helpers")
{
    const Permutation p{1, 2, 0};
    CHECK(perm_is_valid(p));
    CHECK_FALSE(perm_is_valid({0, 0}));
    CHECK(perm_compose(p, perm_inverse(p)) == perm_identity(3));
    CHECK(perm_cycles(perm_identity(4)) == "()");
    CHECK(perm_cycles(p) == "(1 2 3)");
}

TEST_CASE("dense round trip and restriction")
{
    std::mt19937_64 rng(3);
    const Gpm a = oracle::random_gpm(rng, 2, 1, 4);
    CHECK(Gpm::from_dense(a.dense(), 1) == a);
    CHECK(a.transpose().dense() == a.dense().transpose());
    const Gpm d = Gpm::block_diag({a, a});
    CHECK(d.size() == 8);
    std::vector<std::size_t> cols{0, 1, 2, 3};
    std::vector<std::size_t> rows;
    for (std::size_t j : cols)
        rows.push_back(a.perm()[j]);
    std::sort(rows.begin(), rows.end());
    CHECK(d.restrict(rows, cols) == a);
}

TEST_CASE("companion transfer biconditional on sampled instances")
{
    // W A = B Delta^{-1}(V)  iff  V A^comp = B^comp Delta(W), for random small W, V
    std::mt19937_64 rng(99);
    int both = 0;
    for (int n = 0; n < 40; ++n) {
        const std::size_t m = 2, l = 2, i = static_cast<std::size_t>(n % 2);
        const Gpm a = oracle::random_gpm(rng, m, i, l), b = oracle::random_gpm(rng, m, i, l);
        const Gpm ac = companion(a), bc = companion(b);
        PolyMatrix w(l, l, m), v(l, l, m);
        for (std::size_t r = 0; r < l; ++r)
            for (std::size_t col = 0; col < l; ++col) {
                w.set(r, col, oracle::random_poly(rng, m, 1, 2));
                v.set(r, col, oracle::random_poly(rng, m, 1, 2));
            }
        const bool lhs = w * a.dense() == b.dense() * v.shifted(shift_delta_i(m, i, -1));
        const bool rhs = v * ac.dense() == bc.dense() * w.shifted(shift_delta_i(m, i, 1));
        CHECK(lhs == rhs);
        both += lhs;
    }
    CHECK(both == 0); // random matrices are generically not intertwiners
}
