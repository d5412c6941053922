#pragma once

#include "freesl/superfree.hpp"

#include <set>
#include <vector>

namespace freesl {

// Parameters of the exponential module for g = sum a_i x_i^{k_i} with parity set S (0-based).
struct ExpModuleSpec {
    std::size_t m = 0;
    std::vector<Rational> a;
    std::vector<int> k;
    std::set<std::size_t> S;

    void validate() const; // throws Domain
    bool in_S(std::size_t i) const { return S.count(i) != 0; }
    std::size_t K() const;  // product of k
    int s() const;          // gcd of k
    bool operator==(const ExpModuleSpec& o) const { return m == o.m && a == o.a && k == o.k && S == o.S; }
};

using Residue = IntVec;

// Lexicographic position of r in Z/k_1 x ... x Z/k_m, first coordinate most significant.
std::size_t residue_index(const Residue& r, const std::vector<int>& k);
Residue residue_at(std::size_t index, const std::vector<int>& k);
std::vector<Residue> all_residues(const std::vector<int>& k);

// U(i,j) = [[0, (h/alpha) I_j], [I_i, 0]],  V(i,j) = [[0, -h I_j], [alpha I_i, 0]] in variable var.
Gpm block_U(const Rational& alpha, std::size_t nvars, std::size_t var, std::size_t i, std::size_t j);
Gpm block_V(const Rational& alpha, std::size_t nvars, std::size_t var, std::size_t i, std::size_t j);

FreeModule realize(const ExpModuleSpec& spec);

// Permutation of residue positions: r_i -> r_i + 1 (i not in S) or r_i - 1 (i in S).
Permutation residue_perm(const ExpModuleSpec& spec, std::size_t i);

// sum_{i not in S} r_i - sum_{i in S} r_i on representatives 0..k_i-1.
long norm_S(const Residue& r, const std::set<std::size_t>& S);

struct OrbitPartition {
    int s = 1;
    std::vector<std::vector<std::size_t>> classes; // residue positions with norm = p mod s, sorted
    std::vector<std::vector<std::size_t>> shadow;  // residue_perm(i)^{-1} applied to classes[p], sorted
};

// Also asserts that the shadow classes do not depend on i and that the subgroup generated by
// residue_perm(i) * residue_perm(i+1)^{-1} is transitive on each class.
OrbitPartition orbit_partition(const ExpModuleSpec& spec);

FreeModule summand(const ExpModuleSpec& spec, int p);

// (h_i - b_i)(h_i + b_i + 1) for the monomial exponential with exponent vector ell, ell[i] == 0.
Poly annihilator_witness(const std::vector<int>& ell, std::size_t i, int b_i);

} // namespace freesl
