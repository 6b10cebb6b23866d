#pragma once

#include <vector>

#include "grassmatch/matrix.hpp"

namespace grassmatch {

// Thin SVD of a wide matrix a (r x c, r <= c): a = u * diag(sigma) * v with
// u r x r orthogonal, sigma descending, v r x c with orthonormal rows.
// Rows whose singular value underflows relative to sigma[0] are zeroed in v.
struct Svd {
    Matrix u;
    std::vector<double> sigma;
    Matrix v;
};

// One-sided Jacobi on the rows: high relative accuracy even for singular
// values near the 1e-10 rank threshold. Throws SizeMismatch when rows > cols.
Svd svd_thin(const Matrix& a, int max_sweeps = 60);

// Largest singular value; accepts any shape (transposes tall input).
double spectral_norm(const Matrix& a);

} // namespace grassmatch
