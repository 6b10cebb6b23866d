#include "grassmatch/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "grassmatch/errors.hpp"
#include "grassmatch/kernels.hpp"

namespace grassmatch {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

bool Matrix::all_finite() const {
    return kernels::active().all_finite(data.data(), data.size());
}

Matrix Matrix::transposed() const {
    Matrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw SizeMismatch("matmul: inner dimensions differ");
    Matrix c(a.rows, b.cols);
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < a.rows; ++i) {
        double* ci = c.row(i);
        const double* ai = a.row(i);
        for (std::size_t l = 0; l < a.cols; ++l) {
            if (ai[l] != 0.0) k.axpy(ci, ai[l], b.row(l), b.cols);
        }
    }
    return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw SizeMismatch("matrix subtraction: shapes differ");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data.size(); ++i) c.data[i] -= b.data[i];
    return c;
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (double x : a.data) m = std::max(m, std::fabs(x));
    return m;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (!a.same_shape(b)) throw SizeMismatch("max_abs_diff: shapes differ");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        m = std::max(m, std::fabs(a.data[i] - b.data[i]));
    }
    return m;
}

double frobenius_norm(const Matrix& a) {
    return std::sqrt(kernels::active().dot(a.data.data(), a.data.data(),
                                           a.data.size()));
}

double trace(const Matrix& a) {
    const std::size_t n = std::min(a.rows, a.cols);
    double t = 0.0;
    for (std::size_t i = 0; i < n; ++i) t += a(i, i);
    return t;
}

} // namespace grassmatch
