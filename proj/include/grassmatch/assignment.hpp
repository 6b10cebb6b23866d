#pragma once

#include "grassmatch/matrix.hpp"
#include "grassmatch/permutation.hpp"

namespace grassmatch {

// Maximizes sum_i profit(i, map[i]) over permutations. Shortest augmenting
// path with dual potentials, O(n^3); the per-round column scan runs through
// the kernel table. Throws NonFinite on NaN/inf entries, SizeMismatch on a
// non-square matrix. Ties resolve toward the lowest column index; only the
// optimal value is contractual under ties.
Permutation lap_max(const Matrix& profit);

// Exhaustive reference for n <= 9; ties go to the lexicographically smallest
// map. Throws TooLarge above that.
Permutation brute_force_lap(const Matrix& profit);

double assignment_value(const Matrix& profit, const Permutation& p);

} // namespace grassmatch
