#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gbell/rational.hpp"

namespace gbell::linalg {

using RatMat = std::vector<std::vector<Rat>>;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

// In-place reduced row echelon form; returns the pivot columns in order.
std::vector<int> rref(RatMat& m);

int rat_rank(RatMat m);

// Divide by the gcd of the entries and make the first nonzero entry
// positive. The zero vector is left alone.
void make_primitive(IntVec& v);

// Primitive integer basis (as rows) of { x : m x = 0 }.
IntMat integer_kernel(const IntMat& m);

// Clear denominators of a rational vector into a primitive integer vector.
IntVec scale_to_integers(const std::vector<Rat>& v);

// One exact solution of a x = rhs, or nullopt when inconsistent.
std::optional<std::vector<Rat>> solve_exact(RatMat a, std::vector<Rat> rhs);

// Fraction-free Gaussian elimination (Bareiss); exact integer rank.
int bareiss_rank(IntMat m);

// 31-bit prime for randomized-free modular rank bounds: mod-p rank never
// exceeds the true rank, so an answer of k certifies rank >= k.
inline constexpr uint32_t kRankPrime = 2147483629u;

std::vector<uint32_t> reduce_mod_p(const IntVec& v);

// Rank over GF(kRankPrime) of the rows pointed at (each of length cols).
int mod_p_rank(const std::vector<const std::vector<uint32_t>*>& rows, int cols);

} // namespace gbell::linalg
