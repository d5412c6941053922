#pragma once

#include "freesl/gpm.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace freesl {

enum class Parity { Even = 0, Odd = 1 };
inline Parity operator+(Parity a, Parity b)
{
    return static_cast<Parity>((static_cast<int>(a) + static_cast<int>(b)) & 1);
}

// Finite sum of terms M(h) * shift_z acting on Q[h]^{2l}, parity-graded.
class TwistedOperator {
public:
    TwistedOperator() = default;
    TwistedOperator(Parity parity, std::size_t dim, std::size_t nvars);
    static TwistedOperator single(Parity parity, const PolyMatrix& mat, const ShiftVector& z);

    Parity parity() const { return parity_; }
    std::size_t dim() const { return dim_; }
    std::size_t nvars() const { return nvars_; }
    const std::map<ShiftVector, PolyMatrix>& terms() const { return terms_; }

    void add_term(const ShiftVector& z, const PolyMatrix& mat);
    bool is_zero() const { return terms_.empty(); }
    // Total number of nonzero matrix entries over all shift terms.
    std::size_t nonzero_entries() const;
    // Even operators must be block diagonal, odd ones block anti-diagonal.
    bool has_parity_shape() const;

    TwistedOperator& operator+=(const TwistedOperator& o);
    TwistedOperator& operator-=(const TwistedOperator& o);
    friend TwistedOperator operator+(TwistedOperator a, const TwistedOperator& b) { return a += b; }
    friend TwistedOperator operator-(TwistedOperator a, const TwistedOperator& b) { return a -= b; }
    TwistedOperator scaled(const Rational& c) const;

    std::vector<Poly> apply(const std::vector<Poly>& v) const;

    bool operator==(const TwistedOperator& o) const;

private:
    void check_compatible(const TwistedOperator& o) const;

    Parity parity_ = Parity::Even;
    std::size_t dim_ = 0;
    std::size_t nvars_ = 0;
    std::map<ShiftVector, PolyMatrix> terms_;
};

TwistedOperator compose(const TwistedOperator& p, const TwistedOperator& q);
TwistedOperator super_bracket(const TwistedOperator& p, const TwistedOperator& q);

// Spanning set of sl(m|1): h_i, e_ij (i != j), e_{i,odd} (raise), e_{odd,i} (lower). 0-based indices.
struct LieBasisElement {
    enum class Kind { H = 0, E = 1, Raise = 2, Lower = 3 };
    Kind kind = Kind::H;
    std::size_t i = 0;
    std::size_t j = 0; // only used by E

    static LieBasisElement h(std::size_t i) { return {Kind::H, i, 0}; }
    static LieBasisElement e(std::size_t i, std::size_t j) { return {Kind::E, i, j}; }
    static LieBasisElement raise(std::size_t i) { return {Kind::Raise, i, 0}; }
    static LieBasisElement lower(std::size_t i) { return {Kind::Lower, i, 0}; }

    Parity parity() const { return (kind == Kind::Raise || kind == Kind::Lower) ? Parity::Odd : Parity::Even; }
    std::string name() const; // 1-based, e.g. "h1", "e1,2", "e1,1bar", "e1bar,1"
    auto operator<=>(const LieBasisElement&) const = default;
};

std::vector<LieBasisElement> lie_basis(std::size_t m);

using LieCombo = std::map<LieBasisElement, Rational>;

// Bracket in gl(m|1) rewritten in the spanning set. Throws Internal if the projection fails.
LieCombo gl_bracket(const LieBasisElement& x, const LieBasisElement& y, std::size_t m);

// Module M(A_1..A_m) on Q[h]^l (even) + Q[h]^l (odd); pairs[i] uses variable h_i.
class FreeModule {
public:
    FreeModule() = default;
    FreeModule(std::size_t m, std::vector<CompanionPair> pairs);

    std::size_t m() const { return m_; }
    std::size_t half_rank() const { return l_; }
    const std::vector<CompanionPair>& pairs() const { return pairs_; }

    bool operator==(const FreeModule& o) const { return m_ == o.m_ && pairs_ == o.pairs_; }

private:
    std::size_t m_ = 0;
    std::size_t l_ = 0;
    std::vector<CompanionPair> pairs_;
};

// Rank (1|1) module: A_i = [b_i h_i] for i in T, [b_i] otherwise.
FreeModule rank_one_module(const std::vector<Rational>& b, const std::set<std::size_t>& T);

enum class OddDirection { Raise, Lower };

TwistedOperator op_h(const FreeModule& mod, std::size_t i);
TwistedOperator op_e_odd(const FreeModule& mod, std::size_t i, OddDirection dir);
TwistedOperator op_e_even(const FreeModule& mod, std::size_t i, std::size_t j);
TwistedOperator op_of(const FreeModule& mod, const LieBasisElement& x);

struct RelationFailure {
    LieBasisElement x;
    LieBasisElement y;
    std::size_t residual_nonzero_terms = 0;
};

struct RelationReport {
    std::size_t checked = 0;
    std::vector<RelationFailure> failed;
    bool ok() const { return failed.empty(); }
};

RelationReport verify_relations(const FreeModule& mod);

FreeModule dual(const FreeModule& mod);

struct OrbitComponent {
    std::vector<std::size_t> even_labels; // sorted
    std::vector<std::size_t> odd_labels;  // sorted
    FreeModule module;
};

// Components of the graph joining even label perm_i(c) to odd label c for every generator.
std::vector<OrbitComponent> orbit_split(const FreeModule& mod);
// Inverse of orbit_split: places each restricted module back at its labels.
FreeModule reassemble(std::size_t m, std::size_t half_rank, const std::vector<OrbitComponent>& parts);

// Closure of F(H+m-1)Q[h]^l (even) + F(H)Q[h]^l (odd) under h_i, e_{i,odd}, e_{odd,i}, with H = sum h_j.
bool filtration_member_check(const FreeModule& mod, const UniPoly& F);

} // namespace freesl
