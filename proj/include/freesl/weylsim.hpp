#pragma once

#include "freesl/expmod.hpp"
#include "freesl/linsolve.hpp"

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace freesl {

// Element p_even(x) e^g + p_odd(x) xi e^g; polynomials use the same ring type with x_i in place of h_i.
struct WeylElement {
    Poly even;
    Poly odd;
    bool operator==(const WeylElement& o) const { return even == o.even && odd == o.odd; }
};

struct DiffFactor {
    enum class Kind { MulX, D, Xi, DXi };
    Kind kind;
    std::size_t var = 0; // used by MulX and D
};

// Written left to right; the rightmost factor acts first.
struct DiffTerm {
    Rational coef;
    std::vector<DiffFactor> word;
};
using DiffOp = std::vector<DiffTerm>;

std::string to_string(const DiffOp& op);

using PhiTable = std::map<LieBasisElement, DiffOp>;

DiffOp phi_image(const LieBasisElement& x, const std::set<std::size_t>& S);
PhiTable phi_table(std::size_t m, const std::set<std::size_t>& S);

// D(m|1) acting on Q[x, xi] e^g: x_i multiplies, d_i acts as d/dx_i + dg/dx_i.
class TwistedWeyl {
public:
    explicit TwistedWeyl(Poly g);
    std::size_t m() const { return g_.nvars(); }
    const Poly& g() const { return g_; }
    WeylElement apply(const DiffOp& op, const WeylElement& v) const;
    // Largest total-degree increase of any term of op.
    int degree_raise(const DiffOp& op) const;

private:
    Poly g_;
    std::vector<Poly> grad_;
};

Poly differentiate(const Poly& p, std::size_t var);
Poly g_from_spec(const ExpModuleSpec& spec);

// Basis {x^b xi^eps e^g : |b| <= N}, parity-major, lexicographic in b.
class TruncatedBasis {
public:
    TruncatedBasis(std::size_t m, std::size_t N);
    std::size_t size() const { return elems_.size(); }
    std::size_t truncation() const { return N_; }
    const std::pair<int, Exponents>& at(std::size_t idx) const { return elems_[idx]; }
    // Index of (eps, b), or size() if outside the truncation.
    std::size_t index_of(int eps, const Exponents& b) const;
    WeylElement element(std::size_t idx) const;
    // Sparse coordinates; returns false if some term lies outside the truncation.
    bool coordinates(const WeylElement& v, SparseVec& out) const;

private:
    std::size_t m_, N_;
    std::vector<std::pair<int, Exponents>> elems_;
    std::map<std::pair<int, Exponents>, std::size_t> index_;
};

// Sparse matrix of one generator on the truncated basis; column c is usable only if valid[c].
struct TruncAction {
    std::vector<SparseVec> columns;
    std::vector<bool> valid;
};

TruncAction build_action(const TwistedWeyl& weyl, const TruncatedBasis& basis, const DiffOp& op);

struct TruncFailure {
    LieBasisElement x;
    LieBasisElement y;
    std::size_t failing_vectors = 0;
};

struct TruncReport {
    std::size_t basis_size = 0;
    int delta_max = 0;
    std::size_t guard_vectors = 0;    // basis vectors with |b| <= N - 2 delta_max
    std::size_t checked_vectors = 0;  // vectors whose whole relation stayed inside the truncation
    std::size_t relation_checks = 0;  // (pair, vector) evaluations
    std::size_t audit_violations = 0; // guard-band vectors that touched an invalid column
    std::vector<TruncFailure> failed;
    bool ok() const { return failed.empty() && audit_violations == 0; }
};

// Throws GuardBand when N < 2 delta_max.
TruncReport relation_check_truncated(const Poly& g, const std::set<std::size_t>& S, std::size_t N,
                                     const PhiTable* table = nullptr);

// Checks theta(X v) = X theta(v) for every generator and every basis vector with |b| <= N - guard.
// theta is a linear map from basis vectors of E(g, S) into a FreeModule.
using BasisImage = std::function<std::vector<Poly>(int eps, const Exponents& b)>;
bool intertwines(const TwistedWeyl& weyl, const PhiTable& table, const FreeModule& target, const BasisImage& theta,
                 std::size_t N);

// Linear g = sum a_i x_i against M(a_S, complement of S).
bool theta_check(const std::vector<Rational>& a, const std::set<std::size_t>& S, std::size_t N,
                 bool corrupt_v_sign = false);

// m = 1, g = a x^k, S empty or {0}, against realize of the same spec.
bool phi_sl11_check(const Rational& a, int k, const std::set<std::size_t>& S, std::size_t N);

struct CensusClass {
    Residue r;
    int eps = 0;
    std::size_t span_rank = 0;
    std::size_t class_size = 0;
    bool closed = true; // every h-image stays in the residue class
};

struct CensusReport {
    std::size_t even_classes = 0;
    std::size_t odd_classes = 0;
    bool recovered = true;
    std::vector<CensusClass> classes;
};

CensusReport uh_free_census(const ExpModuleSpec& spec, std::size_t N);

// g = alpha x^ell with ell[i] = 0: the annihilator witness kills every x^b e^g with |b| <= N.
bool annihilator_kills(const Rational& alpha, const std::vector<int>& ell, const std::set<std::size_t>& S,
                       std::size_t i, std::size_t N);

} // namespace freesl
