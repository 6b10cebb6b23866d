#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops behind the numerics: one scalar reference
// implementation and one AVX2+FMA implementation, selected at runtime via
// CPUID. Everything above this layer (SVD sweeps, Frank-Wolfe gradients,
// Sinkhorn balancing, LAP shortest-path rounds) calls through the active
// table, so the two backends are interchangeable and equivalence-tested.

namespace grassmatch::kernels {

// One Dijkstra round of the dense masked LAP scan. Column j with
// done[j] != 0.0 is settled and must be left untouched.
struct ScanHit {
    double value;        // smallest tentative path cost among active columns
    std::int64_t column; // its column, lowest index on ties; -1 if none active
};

struct Table {
    const char* name;

    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*sum)(const double* a, std::size_t n);

    // y += a * x
    void (*axpy)(double* y, double a, const double* x, std::size_t n);
    // y *= a
    void (*scale)(double* y, double a, std::size_t n);
    // y *= x elementwise
    void (*mul_ew)(double* y, const double* x, std::size_t n);

    // [x; y] <- [c*x - s*y; s*x + c*y], the Jacobi plane rotation.
    void (*plane_rot)(double* x, double* y, double c, double s, std::size_t n);

    // dst[j] = sum_{t<k} coeff[t] * rows[t][j]. Overwrites dst. This is the
    // rank-d expansion kernel (P = V^T V rows, FW gradient rows).
    void (*weighted_row_sum)(double* dst, const double* coeff,
                             const double* const* rows, std::size_t k,
                             std::size_t n);

    bool (*all_finite)(const double* a, std::size_t n);

    // For every active column j:
    //   r = min_val - profit_row[j] - v[j]      (costs are negated profits)
    //   if r < dist[j]: dist[j] = r; origin_row[j] = row_index
    // and return the smallest post-update dist over active columns. The
    // scalar and AVX2 variants are bit-identical by construction (no FMA,
    // same operation order, lowest-column tie-break).
    ScanHit (*lap_scan)(const double* profit_row, const double* v,
                        const double* done, double min_val, double* dist,
                        double* origin_row, double row_index, std::size_t n);
};

const Table& scalar();

// Only dereferenceable when avx2_available().
const Table& avx2();

bool avx2_available();

// Selected once at startup (AVX2 if the CPU has it, else scalar); tests and
// the CLI --force-scalar flag may override.
const Table& active();
void set_active(const Table& t);

} // namespace grassmatch::kernels
