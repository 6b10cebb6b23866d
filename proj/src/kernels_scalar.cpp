#include "grassmatch/kernels.hpp"

#include <cmath>
#include <limits>

namespace grassmatch::kernels {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

void axpy_scalar(double* y, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double* y, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= a;
}

void mul_ew_scalar(double* y, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= x[i];
}

void plane_rot_scalar(double* x, double* y, double c, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

void weighted_row_sum_scalar(double* dst, const double* coeff,
                             const double* const* rows, std::size_t k,
                             std::size_t n) {
    if (k == 0) {
        for (std::size_t j = 0; j < n; ++j) dst[j] = 0.0;
        return;
    }
    for (std::size_t j = 0; j < n; ++j) dst[j] = coeff[0] * rows[0][j];
    for (std::size_t t = 1; t < k; ++t) {
        const double ct = coeff[t];
        const double* rt = rows[t];
        for (std::size_t j = 0; j < n; ++j) dst[j] += ct * rt[j];
    }
}

bool all_finite_scalar(const double* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(a[i])) return false;
    }
    return true;
}

ScanHit lap_scan_scalar(const double* profit_row, const double* v,
                        const double* done, double min_val, double* dist,
                        double* origin_row, double row_index, std::size_t n) {
    double best = std::numeric_limits<double>::infinity();
    std::int64_t best_col = -1;
    for (std::size_t j = 0; j < n; ++j) {
        if (done[j] != 0.0) continue;
        const double r = min_val - profit_row[j] - v[j];
        if (r < dist[j]) {
            dist[j] = r;
            origin_row[j] = row_index;
        }
        if (dist[j] < best) {
            best = dist[j];
            best_col = static_cast<std::int64_t>(j);
        }
    }
    return {best, best_col};
}

} // namespace

const Table& scalar() {
    static const Table t{
        "scalar",        dot_scalar,       sum_scalar,
        axpy_scalar,     scale_scalar,     mul_ew_scalar,
        plane_rot_scalar, weighted_row_sum_scalar, all_finite_scalar,
        lap_scan_scalar,
    };
    return t;
}

} // namespace grassmatch::kernels
