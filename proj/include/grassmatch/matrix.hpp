#pragma once

#include <cstddef>
#include <vector>

namespace grassmatch {

// Dense row-major matrix of doubles. Row pointers are contiguous, so the
// SIMD kernels operate on rows directly.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0)
        : rows(r), cols(c), data(r * c, fill) {}

    static Matrix identity(std::size_t n);

    double* row(std::size_t i) { return data.data() + i * cols; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    bool empty() const { return data.empty(); }
    bool same_shape(const Matrix& o) const { return rows == o.rows && cols == o.cols; }

    bool all_finite() const;
    Matrix transposed() const;
};

// Cold-path helpers; hot paths call kernels on raw rows instead.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& a);
double max_abs_diff(const Matrix& a, const Matrix& b);
double frobenius_norm(const Matrix& a);
double trace(const Matrix& a);

} // namespace grassmatch
