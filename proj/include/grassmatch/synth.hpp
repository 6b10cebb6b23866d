#pragma once

#include <cstdint>
#include <vector>

#include "grassmatch/grassmann.hpp"
#include "grassmatch/matrix.hpp"
#include "grassmatch/rng.hpp"

namespace grassmatch {

struct ScenarioConfig {
    std::size_t d = 3;
    std::size_t n = 100;
    double cond = 3.0;    // condition number of the linear map
    double sigma = 0.0;   // multiplicative noise level
    double lambda_ = 1.0; // similarity level, m = floor(lambda * n)
    std::uint64_t seed = 0;
};

// Everything a benchmark cell needs to score a registration afterwards.
struct GroundTruth {
    PointCloud x;       // specimen, d x m
    PointCloud x_full;  // d x n superset of x
    PointCloud y;       // noisy image, d x n
    PointCloud y_clean; // image before noise
    Matrix linear_map;
    Permutation permutation;               // x_full column -> y column
    std::vector<std::int32_t> inlier_index; // columns of x_full kept in x

    // x column k -> y column, the reference matching.
    std::vector<std::int32_t> true_matching() const;
};

// i.i.d. Uniform(0,1) entries.
PointCloud random_cloud(std::size_t d, std::size_t n, Rng& rng);

// Haar-distributed orthogonal matrix (Gram-Schmidt of an i.i.d. Gaussian
// matrix; the positive-norm normalization fixes the sign convention).
Matrix random_orthogonal(std::size_t d, Rng& rng);

// P * O with P symmetric positive definite of exact condition number `cond`
// (extreme eigenvalues 1 and cond, interior ones Uniform(1, cond)) and O
// Haar orthogonal, so cond(L) = cond.
Matrix random_linear(std::size_t d, double cond, Rng& rng);

// Hadamard product with i.i.d. N(1, sigma^2) factors.
PointCloud apply_noise(const PointCloud& y, double sigma, Rng& rng);

// Full protocol: X' ~ Uniform([0,1]^d), L, S, Y = (L X' S) noise, X a
// uniform subset of floor(lambda n) columns. All draws happen in a fixed
// order (cloud, Q, eigenvalues, O, S, noise, subset), so a seed pins the
// scenario.
GroundTruth make_scenario(const ScenarioConfig& cfg);

// Same protocol around a caller-provided specimen X' (file-based clouds).
GroundTruth make_scenario_with_specimen(PointCloud x_full,
                                        const ScenarioConfig& cfg);

Permutation random_permutation(std::size_t n, Rng& rng);

} // namespace grassmatch
