#include <doctest.h>

#include <cmath>
#include <cstring>

#include "grassmatch/errors.hpp"
#include "grassmatch/grid.hpp"
#include "grassmatch/metrics.hpp"
#include "grassmatch/pipeline.hpp"
#include "grassmatch/synth.hpp"
#include "support.hpp"

using namespace grassmatch;
using namespace testsupport;

TEST_CASE("recover_linear: identity, exact model, local optimality") {
    Rng rng(91);
    const PointCloud x = center(random_cloud_t(3, 15, rng));
    std::vector<std::int32_t> ident(15);
    for (std::size_t i = 0; i < 15; ++i) ident[i] = static_cast<std::int32_t>(i);

    const Matrix eye = recover_linear(x, x, ident);
    CHECK(max_abs_diff(eye, Matrix::identity(3)) <= 1e-10);

    // exact model: y = L x S
    const Matrix l = random_linear(3, 4.0, rng);
    const Permutation s = random_permutation(15, rng);
    const PointCloud y(mat_mul_naive(l, permute_columns(x, s).data));
    std::vector<std::int32_t> matching(s.map.begin(), s.map.end());
    const Matrix rec = recover_linear(x, y, matching);
    CHECK(max_abs_diff(rec, l) / max_abs(l) <= 1e-8);

    // noisy case: the solution beats 1000 nearby perturbations
    PointCloud noisy = y;
    for (double& v : noisy.data.data) v *= 1.0 + 0.05 * rng.normal();
    const Matrix fit = recover_linear(x, noisy, matching);
    auto residual = [&](const Matrix& cand) {
        Matrix diff = mat_mul_naive(cand, x.data);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 15; ++j) {
                diff(i, j) -= noisy.data(i, static_cast<std::size_t>(matching[j]));
            }
        }
        return frobenius_norm(diff);
    };
    const double best = residual(fit);
    for (int rep = 0; rep < 1000; ++rep) {
        Matrix delta(3, 3);
        double norm_sq = 0.0;
        for (double& v : delta.data) {
            v = rng.normal();
            norm_sq += v * v;
        }
        Matrix cand = fit;
        for (std::size_t i = 0; i < 9; ++i) {
            cand.data[i] += 1e-3 * delta.data[i] / std::sqrt(norm_sq);
        }
        CHECK(residual(cand) >= best - 1e-12);
    }
}

TEST_CASE("register_clouds on identical clouds is the identity") {
    Rng rng(92);
    const PointCloud x = random_cloud_t(3, 14, rng);
    RegistrationOptions opts;
    opts.trials = 512;
    opts.master_seed = 5;
    const RegistrationResult res = register_clouds(x, x, opts);

    for (std::size_t i = 0; i < 14; ++i) {
        CHECK(res.matching[i] == static_cast<std::int32_t>(i));
    }
    CHECK(max_abs_diff(res.linear_map, Matrix::identity(3)) <= 1e-8);
    for (const double t : res.translation) CHECK(std::fabs(t) <= 1e-8);
    CHECK(res.best_objective <= 3.0 + 1e-8);
    CHECK(res.best_objective >= 3.0 - 1e-8);
}

TEST_CASE("exact regime: noiseless full-overlap run recovers everything") {
    ScenarioConfig cfg;
    cfg.n = 30;
    cfg.cond = 3.0;
    cfg.sigma = 0.0;
    cfg.lambda_ = 1.0;
    cfg.seed = 93;
    const GroundTruth gt = make_scenario(cfg);

    RegistrationOptions opts;
    opts.trials = 512;
    opts.master_seed = 17;
    const RegistrationResult res = register_clouds(gt.x, gt.y, opts);

    CHECK(delta_H(gt.true_matching(), res.matching) == 0.0);
    CHECK(delta_L(gt.linear_map, res.linear_map) <= 1e-6);
}

TEST_CASE("bitwise determinism across worker counts") {
    ScenarioConfig cfg;
    cfg.n = 24;
    cfg.sigma = 0.03;
    cfg.seed = 94;
    const GroundTruth gt = make_scenario(cfg);

    RegistrationOptions opts;
    opts.trials = 32;
    opts.master_seed = 7;

    RegistrationOptions opts4 = opts;
    opts4.threads = 4;
    opts.threads = 1;
    const RegistrationResult a = register_clouds(gt.x, gt.y, opts);
    const RegistrationResult b = register_clouds(gt.x, gt.y, opts4);

    CHECK(a.matching == b.matching);
    CHECK(a.trial_objectives.size() == b.trial_objectives.size());
    CHECK(std::memcmp(a.trial_objectives.data(), b.trial_objectives.data(),
                      a.trial_objectives.size() * sizeof(double)) == 0);
    CHECK(std::memcmp(a.linear_map.data.data(), b.linear_map.data.data(),
                      9 * sizeof(double)) == 0);
    CHECK(std::memcmp(a.translation.data(), b.translation.data(),
                      3 * sizeof(double)) == 0);
}

TEST_CASE("shifting both clouds moves only the translation") {
    ScenarioConfig cfg;
    cfg.n = 20;
    cfg.sigma = 0.01;
    cfg.seed = 95;
    const GroundTruth gt = make_scenario(cfg);

    RegistrationOptions opts;
    opts.trials = 32;
    opts.master_seed = 3;
    const RegistrationResult base = register_clouds(gt.x, gt.y, opts);

    PointCloud xs = gt.x;
    PointCloud ys = gt.y;
    const double shift_x[3] = {5.0, -2.0, 0.5};
    const double shift_y[3] = {-1.0, 3.0, 7.0};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < xs.count(); ++j) xs.data(i, j) += shift_x[i];
        for (std::size_t j = 0; j < ys.count(); ++j) ys.data(i, j) += shift_y[i];
    }
    const RegistrationResult shifted = register_clouds(xs, ys, opts);

    CHECK(shifted.matching == base.matching);
    CHECK(max_abs_diff(shifted.linear_map, base.linear_map) <= 1e-9);
    // t' = t + shift_y - L shift_x
    for (std::size_t i = 0; i < 3; ++i) {
        double want = base.translation[i] + shift_y[i];
        for (std::size_t j = 0; j < 3; ++j) {
            want -= base.linear_map(i, j) * shift_x[j];
        }
        CHECK(shifted.translation[i] == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("translation maps raw x onto raw y") {
    Rng rng(96);
    const PointCloud x = random_cloud_t(3, 18, rng);
    const Matrix l = random_linear(3, 2.0, rng);
    const Permutation s = random_permutation(18, rng);
    const double t[3] = {4.0, -1.5, 2.25};
    PointCloud y(mat_mul_naive(l, permute_columns(x, s).data));
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 18; ++j) y.data(i, j) += t[i];
    }

    RegistrationOptions opts;
    opts.trials = 512;
    opts.master_seed = 11;
    const RegistrationResult res = register_clouds(x, y, opts);

    for (std::size_t j = 0; j < 18; ++j) {
        for (std::size_t i = 0; i < 3; ++i) {
            double mapped = res.translation[i];
            for (std::size_t q = 0; q < 3; ++q) {
                mapped += res.linear_map(i, q) * x.data(q, j);
            }
            CHECK(mapped ==
                  doctest::Approx(
                      y.data(i, static_cast<std::size_t>(res.matching[j])))
                      .epsilon(1e-6));
        }
    }
}

TEST_CASE("point discrepancy: injective matching, mostly correct pairs") {
    // With m < n the subset barycenter differs from the full one, so even a
    // noiseless instance has its padded-QAP optimum slightly off the planted
    // matching; the realistic contract is a largely correct, injective
    // matching and a close linear map, not bitwise recovery.
    double pair_acc = 0.0;
    std::vector<double> dls;
    const int runs = 20;
    for (int rep = 0; rep < runs; ++rep) {
        ScenarioConfig cfg;
        cfg.n = 20;
        cfg.sigma = 0.0;
        cfg.lambda_ = 0.8;
        cfg.seed = 970 + rep;
        const GroundTruth gt = make_scenario(cfg);
        REQUIRE(gt.x.count() == 16);

        RegistrationOptions opts;
        opts.trials = 512;
        opts.master_seed = 4400 + rep;
        const RegistrationResult res = register_clouds(gt.x, gt.y, opts);

        std::vector<bool> used(20, false);
        bool injective = true;
        for (const std::int32_t j : res.matching) {
            if (used[static_cast<std::size_t>(j)]) injective = false;
            used[static_cast<std::size_t>(j)] = true;
        }
        CHECK(injective);

        const auto truth = gt.true_matching();
        int correct = 0;
        for (std::size_t i = 0; i < truth.size(); ++i) {
            if (truth[i] == res.matching[i]) ++correct;
        }
        pair_acc += static_cast<double>(correct) /
                    static_cast<double>(truth.size()) / runs;
        dls.push_back(delta_L(gt.linear_map, res.linear_map));
    }
    CHECK(pair_acc >= 0.6);
    std::sort(dls.begin(), dls.end());
    CHECK(dls[runs / 2] <= 0.3); // median map error stays small
}

TEST_CASE("register_clouds rejects m > n") {
    Rng rng(98);
    const PointCloud big = random_cloud_t(3, 12, rng);
    const PointCloud small = random_cloud_t(3, 8, rng);
    RegistrationOptions opts;
    opts.trials = 2;
    CHECK_THROWS_AS(register_clouds(big, small, opts), SizeMismatch);
}

TEST_CASE("both consensus modes share one trial set") {
    ScenarioConfig cfg;
    cfg.n = 16;
    cfg.sigma = 0.05;
    cfg.seed = 99;
    const GroundTruth gt = make_scenario(cfg);

    RegistrationOptions opts;
    opts.trials = 16;
    opts.master_seed = 21;
    const std::vector<ConsensusMode> modes{ConsensusMode::BestMatch,
                                           ConsensusMode::WeightedSum};
    const auto results = register_clouds_modes(gt.x, gt.y, opts, modes);
    REQUIRE(results.size() == 2);
    CHECK(results[0].mode_used == ConsensusMode::BestMatch);
    CHECK(results[1].mode_used == ConsensusMode::WeightedSum);
    CHECK(results[0].trial_objectives == results[1].trial_objectives);

    // single-mode entry point agrees with the paired run
    RegistrationOptions best_opts = opts;
    best_opts.consensus.mode = ConsensusMode::BestMatch;
    const RegistrationResult solo = register_clouds(gt.x, gt.y, best_opts);
    CHECK(solo.matching == results[0].matching);
}
