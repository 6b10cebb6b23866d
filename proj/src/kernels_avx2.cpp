// AVX2+FMA variants. This TU is compiled with -mavx2 -mfma; the dispatcher
// only hands out this table when CPUID reports both features.
//
// lap_scan is kept bit-identical to the scalar reference: same operation
// order, no FMA contraction, strict-less comparisons, lowest-column
// tie-break. The arithmetic kernels (dot, axpy, weighted_row_sum, ...) use
// FMA and block accumulators, so they differ from scalar only in rounding.

#include "grassmatch/kernels.hpp"

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace grassmatch::kernels {
namespace {

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    }
    acc0 = _mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(a + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(a + i));
    acc0 = _mm256_add_pd(acc0, acc1);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc0);
    double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) acc += a[i];
    return acc;
}

void axpy_avx2(double* y, double a, const double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                                _mm256_loadu_pd(y + i)));
        _mm256_storeu_pd(y + i + 4, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4),
                                                    _mm256_loadu_pd(y + i + 4)));
    }
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i),
                                                _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void scale_avx2(double* y, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_mul_pd(va, _mm256_loadu_pd(y + i)));
    }
    for (; i < n; ++i) y[i] *= a;
}

void mul_ew_avx2(double* y, const double* x, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(y + i),
                                              _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) y[i] *= x[i];
}

void plane_rot_avx2(double* x, double* y, double c, double s, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d xi = _mm256_loadu_pd(x + i);
        const __m256d yi = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(x + i, _mm256_fmsub_pd(vc, xi, _mm256_mul_pd(vs, yi)));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, xi, _mm256_mul_pd(vc, yi)));
    }
    for (; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

void weighted_row_sum_avx2(double* dst, const double* coeff,
                           const double* const* rows, std::size_t k,
                           std::size_t n) {
    if (k == 0) {
        for (std::size_t j = 0; j < n; ++j) dst[j] = 0.0;
        return;
    }
    const __m256d c0 = _mm256_set1_pd(coeff[0]);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d acc = _mm256_mul_pd(c0, _mm256_loadu_pd(rows[0] + j));
        for (std::size_t t = 1; t < k; ++t) {
            acc = _mm256_fmadd_pd(_mm256_set1_pd(coeff[t]),
                                  _mm256_loadu_pd(rows[t] + j), acc);
        }
        _mm256_storeu_pd(dst + j, acc);
    }
    for (; j < n; ++j) {
        double acc = coeff[0] * rows[0][j];
        for (std::size_t t = 1; t < k; ++t) acc += coeff[t] * rows[t][j];
        dst[j] = acc;
    }
}

bool all_finite_avx2(const double* a, std::size_t n) {
    // x - x == 0 exactly when x is finite (NaN and +-inf both yield NaN).
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(a + i);
        const __m256d ok = _mm256_cmp_pd(_mm256_sub_pd(x, x), zero, _CMP_EQ_OQ);
        if (_mm256_movemask_pd(ok) != 0xF) return false;
    }
    for (; i < n; ++i) {
        if (!std::isfinite(a[i])) return false;
    }
    return true;
}

ScanHit lap_scan_avx2(const double* profit_row, const double* v,
                      const double* done, double min_val, double* dist,
                      double* origin_row, double row_index, std::size_t n) {
    const double inf = std::numeric_limits<double>::infinity();
    const __m256d vminval = _mm256_set1_pd(min_val);
    const __m256d vrowidx = _mm256_set1_pd(row_index);
    const __m256d vzero = _mm256_setzero_pd();
    const __m256d vinf = _mm256_set1_pd(inf);
    __m256d best_val = vinf;
    __m256d best_col = _mm256_set1_pd(-1.0);
    __m256d col = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
    const __m256d four = _mm256_set1_pd(4.0);

    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d active =
            _mm256_cmp_pd(_mm256_loadu_pd(done + j), vzero, _CMP_EQ_OQ);
        const __m256d r = _mm256_sub_pd(
            _mm256_sub_pd(vminval, _mm256_loadu_pd(profit_row + j)),
            _mm256_loadu_pd(v + j));
        const __m256d d = _mm256_loadu_pd(dist + j);
        const __m256d upd =
            _mm256_and_pd(_mm256_cmp_pd(r, d, _CMP_LT_OQ), active);
        const __m256d nd = _mm256_blendv_pd(d, r, upd);
        _mm256_storeu_pd(dist + j, nd);
        _mm256_storeu_pd(origin_row + j,
                         _mm256_blendv_pd(_mm256_loadu_pd(origin_row + j),
                                          vrowidx, upd));
        const __m256d cand = _mm256_blendv_pd(vinf, nd, active);
        const __m256d lt = _mm256_cmp_pd(cand, best_val, _CMP_LT_OQ);
        best_val = _mm256_blendv_pd(best_val, cand, lt);
        best_col = _mm256_blendv_pd(best_col, col, lt);
        col = _mm256_add_pd(col, four);
    }

    alignas(32) double lane_val[4];
    alignas(32) double lane_col[4];
    _mm256_store_pd(lane_val, best_val);
    _mm256_store_pd(lane_col, best_col);
    double best = inf;
    std::int64_t bcol = -1;
    // Each lane already holds its first (lowest-column) minimum; pick the
    // lexicographically smallest (value, column) pair across lanes.
    for (int l = 0; l < 4; ++l) {
        if (lane_col[l] < 0.0) continue;
        const auto c = static_cast<std::int64_t>(lane_col[l]);
        if (lane_val[l] < best || (lane_val[l] == best && (bcol < 0 || c < bcol))) {
            best = lane_val[l];
            bcol = c;
        }
    }
    for (; j < n; ++j) {
        if (done[j] != 0.0) continue;
        const double r = min_val - profit_row[j] - v[j];
        if (r < dist[j]) {
            dist[j] = r;
            origin_row[j] = row_index;
        }
        if (dist[j] < best) {
            best = dist[j];
            bcol = static_cast<std::int64_t>(j);
        }
    }
    return {best, bcol};
}

} // namespace

const Table& avx2() {
    static const Table t{
        "avx2",         dot_avx2,       sum_avx2,
        axpy_avx2,      scale_avx2,     mul_ew_avx2,
        plane_rot_avx2, weighted_row_sum_avx2, all_finite_avx2,
        lap_scan_avx2,
    };
    return t;
}

} // namespace grassmatch::kernels
