#include "grassmatch/grassmann.hpp"

#include <string>

#include "grassmatch/errors.hpp"
#include "grassmatch/kernels.hpp"
#include "grassmatch/svd.hpp"

namespace grassmatch {

PointCloud::PointCloud(Matrix m) : data(std::move(m)) {
    if (data.rows == 0 || data.cols == 0) {
        throw SizeMismatch("PointCloud: need d >= 1 and n >= 1, got " +
                           std::to_string(data.rows) + "x" +
                           std::to_string(data.cols));
    }
    if (!data.all_finite()) throw NonFinite("PointCloud: non-finite entry");
}

std::vector<double> barycenter(const PointCloud& cloud) {
    const auto& k = kernels::active();
    std::vector<double> b(cloud.dim());
    const double inv_n = 1.0 / static_cast<double>(cloud.count());
    for (std::size_t i = 0; i < cloud.dim(); ++i) {
        b[i] = k.sum(cloud.data.row(i), cloud.count()) * inv_n;
    }
    return b;
}

PointCloud center(const PointCloud& cloud) {
    const auto b = barycenter(cloud);
    PointCloud out = cloud;
    for (std::size_t i = 0; i < cloud.dim(); ++i) {
        double* row = out.data.row(i);
        const double bi = b[i];
        for (std::size_t j = 0; j < cloud.count(); ++j) row[j] -= bi;
    }
    return out;
}

Projector projector(const PointCloud& cloud, double rank_tol) {
    if (cloud.count() < cloud.dim()) {
        throw RankDeficient("projector: fewer points than dimensions");
    }
    const Svd svd = svd_thin(cloud.data);
    const std::size_t d = cloud.dim();
    if (svd.sigma[d - 1] <= rank_tol * svd.sigma[0]) {
        throw RankDeficient("projector: sigma_min/sigma_max = " +
                            std::to_string(svd.sigma[d - 1] / svd.sigma[0]));
    }

    Projector p;
    p.rank = d;
    p.basis = svd.v;

    const std::size_t n = cloud.count();
    p.matrix = Matrix(n, n);
    const auto& k = kernels::active();
    std::vector<const double*> rows(d);
    for (std::size_t t = 0; t < d; ++t) rows[t] = p.basis.row(t);
    std::vector<double> coeff(d);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < d; ++t) coeff[t] = p.basis(t, i);
        k.weighted_row_sum(p.matrix.row(i), coeff.data(), rows.data(), d, n);
    }
    return p;
}

Projector pad_projector(const Projector& p, std::size_t n_target) {
    const std::size_t m = p.size();
    if (n_target < m) {
        throw SizeMismatch("pad_projector: target " + std::to_string(n_target) +
                           " below current size " + std::to_string(m));
    }
    if (n_target == m) return p;

    Projector out;
    out.rank = p.rank;
    out.matrix = Matrix(n_target, n_target);
    for (std::size_t i = 0; i < m; ++i) {
        const double* src = p.matrix.row(i);
        double* dst = out.matrix.row(i);
        for (std::size_t j = 0; j < m; ++j) dst[j] = src[j];
    }
    if (!p.basis.empty()) {
        out.basis = Matrix(p.basis.rows, n_target);
        for (std::size_t t = 0; t < p.basis.rows; ++t) {
            const double* src = p.basis.row(t);
            double* dst = out.basis.row(t);
            for (std::size_t j = 0; j < m; ++j) dst[j] = src[j];
        }
    }
    return out;
}

PointCloud permute_columns(const PointCloud& cloud, const Permutation& s) {
    if (s.size() != cloud.count()) {
        throw SizeMismatch("permute_columns: permutation size " +
                           std::to_string(s.size()) + " vs n = " +
                           std::to_string(cloud.count()));
    }
    PointCloud out = cloud;
    for (std::size_t i = 0; i < cloud.dim(); ++i) {
        const double* src = cloud.data.row(i);
        double* dst = out.data.row(i);
        for (std::size_t j = 0; j < cloud.count(); ++j) {
            dst[static_cast<std::size_t>(s.map[j])] = src[j];
        }
    }
    return out;
}

} // namespace grassmatch
