#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "grassmatch/grassmann.hpp"
#include "grassmatch/matrix.hpp"
#include "grassmatch/permutation.hpp"

namespace grassmatch {

// One benchmark cell; delta_H only exists when there is no point discrepancy.
struct MetricsRecord {
    double sigma = 0.0;
    double lambda_ = 1.0;
    double d_sigma = 0.0;
    double d_lambda = 0.0;
    double delta_L = 0.0;
    double delta_Y = 0.0;
    double delta_X = 0.0;
    std::optional<double> delta_H;
};

// ||L - L0||_2 / ||L||_2.
double delta_L(const Matrix& l_true, const Matrix& l_rec);

// ||L X - L0 X||_2 / ||L X||_2.
double delta_Y(const Matrix& l_true, const Matrix& l_rec, const PointCloud& x);

// Pulls the matched y columns back through L0^-1, aligns them to x's column
// order, and returns ||pullback - x||_2 / ||x||_2.
double delta_X(const Matrix& l_rec, const PointCloud& y,
               std::span<const std::int32_t> matching, const PointCloud& x);

// Fraction of positions where the permutations disagree, equal to
// ||S - S0||_F^2 / (2n).
double delta_H(const Permutation& s_true, const Permutation& s_rec);
double delta_H(std::span<const std::int32_t> a, std::span<const std::int32_t> b);

// ||Y' - Y||_2 / ||Y||_2, the realized relative noise.
double d_sigma(const PointCloud& y_clean, const PointCloud& y_noisy);

// ||X' \ X||_2 / ||X||_2 over the dropped columns.
double d_lambda(const PointCloud& x_full, std::span<const std::int32_t> inliers);

} // namespace grassmatch
