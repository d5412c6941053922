#pragma once

#include "freesl/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace freesl {

// Sorted by column, no zero values.
using SparseVec = std::vector<std::pair<std::size_t, Rational>>;

SparseVec sparse_axpy(const SparseVec& x, const Rational& a, const SparseVec& y); // x + a*y

// Exact nullspace of a sparse rational system over unknowns 0..n-1. Unknowns that share
// no equation are eliminated independently, so the cost follows the largest coupled block.
// Basis vectors are returned ordered by their free (pivot-less) column.
std::vector<SparseVec> sparse_nullspace(std::size_t n, const std::vector<SparseVec>& rows);

// Rank of a dense rational matrix.
std::size_t dense_rank(std::vector<std::vector<Rational>> a);

} // namespace freesl
