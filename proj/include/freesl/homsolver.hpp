#pragma once

#include "freesl/expmod.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace freesl {

// Even homomorphism diag(E, O) with E A_i = B_i Delta_i^{-1}(O) for all i.
struct HomElement {
    PolyMatrix even;
    PolyMatrix odd;
};

struct HomBasis {
    std::size_t degree = 0;
    std::vector<HomElement> basis;
    std::size_t dim() const { return basis.size(); }
};

HomBasis solve_hom(const FreeModule& source, const FreeModule& target, std::size_t degree);

// Unrestricted 2l x 2l ansatz intertwining every odd generator.
struct FullHomResult {
    std::vector<PolyMatrix> basis;
    bool off_diagonal_zero = true;
};
FullHomResult solve_hom_full(const FreeModule& source, const FreeModule& target, std::size_t degree);

// Re-substitution check of the intertwining identities.
bool is_homomorphism(const FreeModule& source, const FreeModule& target, const HomElement& w);

struct EndProfile {
    std::size_t dim = 0;
    std::size_t s = 0;
    std::optional<std::size_t> idempotents;
};
EndProfile end_profile(const ExpModuleSpec& spec, std::size_t degree);

// Counts 0/1 diagonal patterns lying in the span of the constant diagonal endomorphisms.
// Empty when some degree-zero endomorphism is not diagonal (this happens for m = 1, where
// repeated rank-one summands have matrix-algebra endomorphisms).
std::optional<std::size_t> count_idempotents(const HomBasis& degree_zero);

bool indecomposable(const ExpModuleSpec& spec);

// For an endomorphism of realize(spec): the even block is F_p(H) on each orbit class and the odd block F_p(H + c).
// Returns the offset c forced by the computed kernel, or empty if no basis element pins it down.
std::optional<Rational> fitted_odd_offset(const ExpModuleSpec& spec, const HomBasis& end_basis);

bool wps_equiv(const std::vector<Rational>& r, const std::vector<int>& k);
// Integer basis of {c : sum c_i k_i = 0}.
std::vector<std::vector<long>> relation_lattice(const std::vector<int>& k);

struct GkElement {
    std::vector<int> k;
    std::set<std::size_t> support;
};

std::vector<Rational> gk_act(const GkElement& g, const std::vector<Rational>& a);
std::vector<Rational> s_twist(const std::vector<Rational>& a, const std::set<std::size_t>& S);

struct IsoVerdict {
    bool isomorphic = false;
    std::optional<std::set<std::size_t>> witness_support;
};

IsoVerdict iso_exp(const ExpModuleSpec& x, const ExpModuleSpec& y);
bool iso_sl11(const ExpModuleSpec& x, const ExpModuleSpec& y);

struct IsoWitness {
    std::size_t degree = 0;
    HomElement map;
};

// Seeded random search for a homomorphism with unit determinants, degree 0..max_degree.
std::optional<IsoWitness> iso_generic(const FreeModule& source, const FreeModule& target, std::size_t max_degree,
                                      std::uint64_t seed, std::size_t samples_per_degree = 64);

// True when some sampled combination at exactly this degree bound is invertible.
bool unit_combination_exists(const FreeModule& source, const FreeModule& target, std::size_t degree,
                             std::uint64_t seed, std::size_t samples);

struct Classification {
    std::vector<std::vector<std::size_t>> classes;
    std::vector<ExpModuleSpec> canonical; // per input, S without coordinates where k_i = 2
};

Classification classify(const std::vector<ExpModuleSpec>& specs);

} // namespace freesl
