#include "grassmatch/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "grassmatch/errors.hpp"
#include "grassmatch/svd.hpp"

namespace grassmatch {

double delta_L(const Matrix& l_true, const Matrix& l_rec) {
    if (!l_true.same_shape(l_rec)) throw SizeMismatch("delta_L: shapes differ");
    const double denom = spectral_norm(l_true);
    if (denom == 0.0) throw ZeroNorm("delta_L: reference map has zero norm");
    return spectral_norm(l_true - l_rec) / denom;
}

double delta_Y(const Matrix& l_true, const Matrix& l_rec, const PointCloud& x) {
    if (!l_true.same_shape(l_rec)) throw SizeMismatch("delta_Y: shapes differ");
    if (l_true.cols != x.dim()) throw SizeMismatch("delta_Y: map/cloud disagree");
    const Matrix lx = matmul(l_true, x.data);
    const Matrix l0x = matmul(l_rec, x.data);
    const double denom = spectral_norm(lx);
    if (denom == 0.0) throw ZeroNorm("delta_Y: reference image has zero norm");
    return spectral_norm(lx - l0x) / denom;
}

namespace {

Matrix invert_small(const Matrix& a) {
    // Via the SVD; d x d with d tiny everywhere this is used.
    const std::size_t d = a.rows;
    const Svd svd = svd_thin(a);
    if (svd.sigma[d - 1] <= 1e-12 * svd.sigma[0]) {
        throw Singular("matrix inverse: numerically singular");
    }
    Matrix inv(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double acc = 0.0;
            for (std::size_t t = 0; t < d; ++t) {
                acc += svd.v(t, i) / svd.sigma[t] * svd.u(j, t);
            }
            inv(i, j) = acc;
        }
    }
    return inv;
}

} // namespace

double delta_X(const Matrix& l_rec, const PointCloud& y,
               std::span<const std::int32_t> matching, const PointCloud& x) {
    const std::size_t d = x.dim();
    const std::size_t m = x.count();
    if (l_rec.rows != d || l_rec.cols != d) {
        throw SizeMismatch("delta_X: map/cloud dimensions disagree");
    }
    if (matching.size() != m) throw SizeMismatch("delta_X: matching size vs m");
    const Matrix inv = invert_small(l_rec);

    Matrix ym(d, m);
    for (std::size_t i = 0; i < d; ++i) {
        const double* src = y.data.row(i);
        double* dst = ym.row(i);
        for (std::size_t j = 0; j < m; ++j) {
            dst[j] = src[static_cast<std::size_t>(matching[j])];
        }
    }
    const Matrix pullback = matmul(inv, ym);
    const double denom = spectral_norm(x.data);
    if (denom == 0.0) throw ZeroNorm("delta_X: specimen has zero norm");
    return spectral_norm(pullback - x.data) / denom;
}

double delta_H(std::span<const std::int32_t> a, std::span<const std::int32_t> b) {
    if (a.size() != b.size()) throw SizeMismatch("delta_H: sizes differ");
    if (a.empty()) throw EmptyInput("delta_H: empty matchings");
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) ++mismatches;
    }
    return static_cast<double>(mismatches) / static_cast<double>(a.size());
}

double delta_H(const Permutation& s_true, const Permutation& s_rec) {
    return delta_H(std::span<const std::int32_t>(s_true.map),
                   std::span<const std::int32_t>(s_rec.map));
}

double d_sigma(const PointCloud& y_clean, const PointCloud& y_noisy) {
    if (!y_clean.data.same_shape(y_noisy.data)) {
        throw SizeMismatch("d_sigma: shapes differ");
    }
    const double denom = spectral_norm(y_noisy.data);
    if (denom == 0.0) throw ZeroNorm("d_sigma: cloud has zero norm");
    return spectral_norm(y_clean.data - y_noisy.data) / denom;
}

double d_lambda(const PointCloud& x_full, std::span<const std::int32_t> inliers) {
    const std::size_t n = x_full.count();
    const std::size_t d = x_full.dim();
    std::vector<bool> kept(n, false);
    for (const std::int32_t j : inliers) {
        if (j < 0 || static_cast<std::size_t>(j) >= n) {
            throw SizeMismatch("d_lambda: inlier index out of range");
        }
        kept[static_cast<std::size_t>(j)] = true;
    }
    const std::size_t m = inliers.size();
    if (m == n) return 0.0;

    Matrix keep_mat(d, m), drop_mat(d, n - m);
    std::size_t ki = 0, di = 0;
    for (std::size_t j = 0; j < n; ++j) {
        auto& target = kept[j] ? keep_mat : drop_mat;
        const std::size_t col = kept[j] ? ki++ : di++;
        for (std::size_t i = 0; i < d; ++i) target(i, col) = x_full.data(i, j);
    }
    const double denom = spectral_norm(keep_mat);
    if (denom == 0.0) throw ZeroNorm("d_lambda: kept columns have zero norm");
    return spectral_norm(drop_mat) / denom;
}

} // namespace grassmatch
