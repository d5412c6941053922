#pragma once

#include "freesl/polymatrix.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace freesl {

// perm[j] is the image of j; all indices 0-based.
using Permutation = std::vector<std::size_t>;

Permutation perm_identity(std::size_t n);
Permutation perm_inverse(const Permutation& p);
Permutation perm_compose(const Permutation& outer, const Permutation& inner); // outer after inner
bool perm_is_valid(const Permutation& p);
// Cycle notation with 1-based labels and fixed points omitted, "()" for the identity.
std::string perm_cycles(const Permutation& p);

struct GpmFactorization {
    Permutation perm;        // nonzero entry of column j sits in row perm[j]
    std::vector<Poly> diag;  // diag[j] is that entry
};

// Splits a generalized permutation matrix into permutation and diagonal parts.
GpmFactorization gpm_factor(const PolyMatrix& a);

// A nonzero entry of a companion-admissible GPM: coef or coef * h_var.
struct GpmEntry {
    Rational coef;
    int deg = 0;
    bool operator==(const GpmEntry& o) const { return coef == o.coef && deg == o.deg; }
};

class Gpm {
public:
    Gpm() = default;
    Gpm(std::size_t nvars, std::size_t var, Permutation perm, std::vector<GpmEntry> entries);

    // Throws NotGpm for a bad sparsity pattern and NoCompanion for inadmissible entries.
    static Gpm from_dense(const PolyMatrix& a, std::size_t var);
    static Gpm block_diag(const std::vector<Gpm>& blocks);

    std::size_t size() const { return perm_.size(); }
    std::size_t var() const { return var_; }
    std::size_t nvars() const { return nvars_; }
    const Permutation& perm() const { return perm_; }
    const std::vector<GpmEntry>& entries() const { return entries_; }

    Poly entry_poly(std::size_t col) const;
    PolyMatrix dense() const;
    Gpm transpose() const;
    // Rows and columns kept in the given order; perm must map col_idx onto row_idx.
    Gpm restrict(const std::vector<std::size_t>& row_idx, const std::vector<std::size_t>& col_idx) const;

    bool operator==(const Gpm& o) const;
    bool operator!=(const Gpm& o) const { return !(*this == o); }

private:
    std::size_t nvars_ = 0;
    std::size_t var_ = 0;
    Permutation perm_;
    std::vector<GpmEntry> entries_;
};

// The unique B with A*B = B*A = h_var * I.
Gpm companion(const Gpm& a);
Gpm companion(const PolyMatrix& a, std::size_t var);

struct CompanionPair {
    Gpm a;
    Gpm acomp;
    bool operator==(const CompanionPair& o) const { return a == o.a && acomp == o.acomp; }
};

CompanionPair make_pair_from(const Gpm& a);
bool verify_companion(const CompanionPair& pair);

} // namespace freesl
