#pragma once

#include <vector>

#include "grassmatch/matrix.hpp"
#include "grassmatch/permutation.hpp"

namespace grassmatch {

// A d x n cloud, one point per column, d <= n.
struct PointCloud {
    Matrix data;

    PointCloud() = default;
    explicit PointCloud(Matrix m);

    std::size_t dim() const { return data.rows; }
    std::size_t count() const { return data.cols; }
};

// Orthogonal projection of R^n onto the row space of a centered cloud:
// symmetric, idempotent, trace = rank. The rank x n factor (P = basis^T basis)
// is kept for the O(n^2 d) fast paths; padding appends zero columns to it.
struct Projector {
    Matrix matrix;
    std::size_t rank = 0;
    Matrix basis;

    std::size_t size() const { return matrix.rows; }
};

std::vector<double> barycenter(const PointCloud& cloud);

// Subtracts the barycenter from every column; every row of the result sums
// to zero.
PointCloud center(const PointCloud& cloud);

// Builds the projector from the thin SVD of a centered cloud. Throws
// RankDeficient when sigma_d <= rank_tol * sigma_1.
Projector projector(const PointCloud& cloud, double rank_tol = 1e-10);

// Block-diagonal extension P -> P (+) 0 to size n_target; trace is unchanged.
Projector pad_projector(const Projector& p, std::size_t n_target);

// Column j of the output is column s^-1(j) of the input, so
// projector(permute_columns(X, s)).matrix == S^T P_X S.
PointCloud permute_columns(const PointCloud& cloud, const Permutation& s);

} // namespace grassmatch
