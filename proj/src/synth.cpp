#include "grassmatch/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "grassmatch/errors.hpp"
#include "grassmatch/kernels.hpp"

namespace grassmatch {

std::vector<std::int32_t> GroundTruth::true_matching() const {
    std::vector<std::int32_t> m(inlier_index.size());
    for (std::size_t k = 0; k < inlier_index.size(); ++k) {
        m[k] = permutation.map[static_cast<std::size_t>(inlier_index[k])];
    }
    return m;
}

PointCloud random_cloud(std::size_t d, std::size_t n, Rng& rng) {
    Matrix m(d, n);
    for (double& x : m.data) x = rng.uniform();
    return PointCloud(std::move(m));
}

Matrix random_orthogonal(std::size_t d, Rng& rng) {
    Matrix g(d, d);
    for (double& x : g.data) x = rng.normal();

    // Modified Gram-Schmidt on the rows, run twice for orthogonality down to
    // machine precision; row norms are kept positive, which matches the
    // sign-corrected QR construction of a Haar draw.
    const auto& k = kernels::active();
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                const double proj = k.dot(g.row(i), g.row(j), d);
                k.axpy(g.row(i), -proj, g.row(j), d);
            }
            const double norm = std::sqrt(k.dot(g.row(i), g.row(i), d));
            k.scale(g.row(i), 1.0 / norm, d);
        }
    }
    return g;
}

Matrix random_linear(std::size_t d, double cond, Rng& rng) {
    if (cond < 1.0) {
        throw BadCondition("random_linear: cond = " + std::to_string(cond));
    }
    const Matrix q = random_orthogonal(d, rng);
    std::vector<double> eig(d, 1.0);
    if (d >= 2) {
        eig[0] = 1.0;
        eig[d - 1] = cond;
        for (std::size_t i = 1; i + 1 < d; ++i) {
            eig[i] = 1.0 + rng.uniform() * (cond - 1.0);
        }
    }
    const Matrix o = random_orthogonal(d, rng);

    // L = (Q diag(eig) Q^T) O.
    Matrix p(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double acc = 0.0;
            for (std::size_t t = 0; t < d; ++t) acc += q(t, i) * eig[t] * q(t, j);
            p(i, j) = acc;
        }
    }
    return matmul(p, o);
}

PointCloud apply_noise(const PointCloud& y, double sigma, Rng& rng) {
    if (sigma < 0.0) throw BadCondition("apply_noise: sigma < 0");
    if (sigma == 0.0) return y;
    PointCloud out = y;
    std::vector<double> factors(y.count());
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < y.dim(); ++i) {
        for (double& f : factors) f = 1.0 + sigma * rng.normal();
        k.mul_ew(out.data.row(i), factors.data(), y.count());
    }
    return out;
}

Permutation random_permutation(std::size_t n, Rng& rng) {
    Permutation p = Permutation::identity(n);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(p.map[i - 1], p.map[j]);
    }
    return p;
}

namespace {

GroundTruth build(PointCloud x_full, const ScenarioConfig& cfg, Rng& rng) {
    const std::size_t d = x_full.dim();
    const std::size_t n = x_full.count();

    GroundTruth gt;
    gt.linear_map = random_linear(d, cfg.cond, rng);
    gt.permutation = random_permutation(n, rng);

    // Y' = L (X' S): apply the linear map to the permuted specimen.
    const PointCloud shuffled = permute_columns(x_full, gt.permutation);
    Matrix y_clean(d, n);
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t t = 0; t < d; ++t) {
            k.axpy(y_clean.row(i), gt.linear_map(i, t), shuffled.data.row(t), n);
        }
    }
    gt.y_clean = PointCloud(std::move(y_clean));
    gt.y = apply_noise(gt.y_clean, cfg.sigma, rng);

    const auto m = static_cast<std::size_t>(
        std::floor(cfg.lambda_ * static_cast<double>(n)));
    if (m < d) {
        throw BadCondition("scenario: lambda keeps fewer points than dimensions");
    }
    if (m == n) {
        gt.inlier_index.resize(n);
        std::iota(gt.inlier_index.begin(), gt.inlier_index.end(), 0);
        gt.x = x_full;
    } else {
        std::vector<std::int32_t> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(m);
        std::sort(idx.begin(), idx.end());
        gt.inlier_index = idx;
        Matrix xm(d, m);
        for (std::size_t i = 0; i < d; ++i) {
            const double* src = x_full.data.row(i);
            double* dst = xm.row(i);
            for (std::size_t j = 0; j < m; ++j) {
                dst[j] = src[static_cast<std::size_t>(idx[j])];
            }
        }
        gt.x = PointCloud(std::move(xm));
    }
    gt.x_full = std::move(x_full);
    return gt;
}

} // namespace

GroundTruth make_scenario(const ScenarioConfig& cfg) {
    if (!(cfg.lambda_ > 0.0 && cfg.lambda_ <= 1.0)) {
        throw BadCondition("scenario: lambda outside (0,1]");
    }
    Rng rng(cfg.seed);
    PointCloud x_full = random_cloud(cfg.d, cfg.n, rng);
    return build(std::move(x_full), cfg, rng);
}

GroundTruth make_scenario_with_specimen(PointCloud x_full,
                                        const ScenarioConfig& cfg) {
    if (!(cfg.lambda_ > 0.0 && cfg.lambda_ <= 1.0)) {
        throw BadCondition("scenario: lambda outside (0,1]");
    }
    Rng rng(cfg.seed);
    return build(std::move(x_full), cfg, rng);
}

} // namespace grassmatch
