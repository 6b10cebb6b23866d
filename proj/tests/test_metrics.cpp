#include <doctest.h>

#include <cmath>

#include "grassmatch/errors.hpp"
#include "grassmatch/metrics.hpp"
#include "grassmatch/synth.hpp"
#include "support.hpp"

using namespace grassmatch;
using namespace testsupport;

TEST_CASE("delta_L basics and the spectral-norm oracle") {
    Rng rng(81);
    const Matrix l = random_matrix(3, 3, rng, true);
    CHECK(delta_L(l, l) == doctest::Approx(0.0));

    Matrix twice = l;
    for (double& v : twice.data) v *= 2.0;
    CHECK(delta_L(l, twice) == doctest::Approx(1.0).epsilon(1e-10));

    for (int rep = 0; rep < 10; ++rep) {
        const Matrix a = random_matrix(3, 3, rng, true);
        const Matrix b = random_matrix(3, 3, rng, true);
        const double oracle = power_iteration_norm(a - b) / power_iteration_norm(a);
        CHECK(delta_L(a, b) == doctest::Approx(oracle).epsilon(1e-8));
    }

    CHECK_THROWS_AS(delta_L(Matrix(3, 3), Matrix(3, 3)), ZeroNorm);
    CHECK_THROWS_AS(delta_L(Matrix(3, 3), Matrix(2, 2)), SizeMismatch);
}

TEST_CASE("delta_Y is zero at equality and scale-invariant in x") {
    Rng rng(82);
    const Matrix l = random_matrix(3, 3, rng, true);
    const PointCloud x = random_cloud_t(3, 20, rng);
    CHECK(delta_Y(l, l, x) == doctest::Approx(0.0));

    const Matrix l0 = random_matrix(3, 3, rng, true);
    const double base = delta_Y(l, l0, x);
    PointCloud scaled = x;
    for (double& v : scaled.data.data) v *= 10.0;
    CHECK(std::fabs(delta_Y(l, l0, scaled) - base) <= 1e-10);
}

TEST_CASE("delta_X pulls matched columns back through the recovered map") {
    Rng rng(83);
    const PointCloud x = center(random_cloud_t(3, 12, rng));
    const Matrix l = random_linear(3, 3.0, rng);
    const Permutation s = random_permutation(12, rng);
    const PointCloud y(mat_mul_naive(l, permute_columns(x, s).data));

    std::vector<std::int32_t> matching(s.map.begin(), s.map.end());
    CHECK(delta_X(l, y, matching, x) <= 1e-8);

    // relabeling invariance: permute x's columns together with the matching
    const Permutation relabel = random_permutation(12, rng);
    const PointCloud x2 = permute_columns(x, relabel);
    std::vector<std::int32_t> matching2(12);
    for (std::size_t k = 0; k < 12; ++k) {
        matching2[static_cast<std::size_t>(relabel.map[k])] = matching[k];
    }
    const Matrix l0 = random_matrix(3, 3, rng, true);
    CHECK(delta_X(l0, y, matching, x) ==
          doctest::Approx(delta_X(l0, y, matching2, x2)).epsilon(1e-9));

    CHECK_THROWS_AS(delta_X(Matrix(3, 3), y, matching, x), Singular);
}

TEST_CASE("delta_H counts positional disagreements") {
    CHECK(delta_H(Permutation::identity(6), Permutation::identity(6)) == 0.0);

    Permutation everywhere(std::vector<std::int32_t>{1, 0, 3, 2});
    CHECK(delta_H(Permutation::identity(4), everywhere) == 1.0);

    Rng rng(84);
    for (int rep = 0; rep < 20; ++rep) {
        const Permutation a = random_permutation(20, rng);
        const Permutation b = random_permutation(20, rng);
        // dense Frobenius expansion oracle: ||A - B||_F^2 / (2n)
        const Matrix diff = a.matrix() - b.matrix();
        double frob_sq = 0.0;
        for (const double v : diff.data) frob_sq += v * v;
        CHECK(delta_H(a, b) == doctest::Approx(frob_sq / 40.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS(delta_H(Permutation::identity(3), Permutation::identity(4)),
                    SizeMismatch);
}

TEST_CASE("d_sigma and d_lambda trivial cases") {
    Rng rng(85);
    const PointCloud y = random_cloud_t(3, 30, rng);
    CHECK(d_sigma(y, y) == 0.0);

    std::vector<std::int32_t> all(30);
    for (std::size_t i = 0; i < 30; ++i) all[i] = static_cast<std::int32_t>(i);
    CHECK(d_lambda(y, all) == 0.0);

    // dropping columns: ratio of dropped to kept spectral norms
    std::vector<std::int32_t> kept;
    for (std::size_t i = 0; i < 30; i += 2) kept.push_back(static_cast<std::int32_t>(i));
    const double val = d_lambda(y, kept);
    CHECK(val > 0.0);

    Matrix keep_m(3, kept.size()), drop_m(3, 30 - kept.size());
    std::size_t ki = 0, di = 0;
    for (std::size_t j = 0; j < 30; ++j) {
        const bool is_kept = j % 2 == 0;
        for (std::size_t i = 0; i < 3; ++i) {
            (is_kept ? keep_m(i, ki) : drop_m(i, di)) = y.data(i, j);
        }
        (is_kept ? ki : di) += 1;
    }
    CHECK(val == doctest::Approx(power_iteration_norm(drop_m) /
                                 power_iteration_norm(keep_m))
                     .epsilon(1e-8));
}

TEST_CASE("realized noise and discrepancy statistics at benchmark scale") {
    // sigma = 0.05, lambda = 0.9 on a 351-point uniform specimen: the
    // realized relative noise sits near 0.045 and the relative discrepancy
    // near 0.33.
    double ds_sum = 0.0, dl_sum = 0.0;
    const int reps = 10;
    for (int rep = 0; rep < reps; ++rep) {
        ScenarioConfig cfg;
        cfg.n = 351;
        cfg.sigma = 0.05;
        cfg.lambda_ = 0.9;
        cfg.cond = 3.0;
        cfg.seed = 8600 + rep;
        const GroundTruth gt = make_scenario(cfg);
        ds_sum += d_sigma(gt.y_clean, gt.y);
        dl_sum += d_lambda(gt.x_full, gt.inlier_index);
    }
    CHECK(ds_sum / reps == doctest::Approx(0.045).epsilon(0.25));
    CHECK(dl_sum / reps == doctest::Approx(0.33).epsilon(0.2));
}
