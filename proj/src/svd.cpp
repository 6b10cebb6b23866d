#include "grassmatch/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "grassmatch/errors.hpp"
#include "grassmatch/kernels.hpp"

namespace grassmatch {

Svd svd_thin(const Matrix& a, int max_sweeps) {
    if (a.rows > a.cols) throw SizeMismatch("svd_thin: expects rows <= cols");
    if (!a.all_finite()) throw NonFinite("svd_thin: non-finite entry");

    const std::size_t r = a.rows;
    const std::size_t c = a.cols;
    const auto& k = kernels::active();

    Matrix w = a;                      // rows get orthogonalized in place
    Matrix rot = Matrix::identity(r);  // accumulated rotations, w = rot * a

    // Cyclic sweeps over row pairs; stop when every off-diagonal Gram entry
    // is negligible relative to the row norms.
    const double tol = 1e-15;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < r; ++p) {
            for (std::size_t q = p + 1; q < r; ++q) {
                const double app = k.dot(w.row(p), w.row(p), c);
                const double aqq = k.dot(w.row(q), w.row(q), c);
                const double apq = k.dot(w.row(p), w.row(q), c);
                if (std::fabs(apq) <= tol * std::sqrt(app * aqq)) continue;
                rotated = true;
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double cs = 1.0 / std::sqrt(1.0 + t * t);
                const double sn = t * cs;
                k.plane_rot(w.row(p), w.row(q), cs, sn, c);
                k.plane_rot(rot.row(p), rot.row(q), cs, sn, r);
            }
        }
        if (!rotated) break;
    }

    Svd out;
    out.sigma.resize(r);
    std::vector<std::size_t> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> norms(r);
    for (std::size_t i = 0; i < r; ++i) {
        norms[i] = std::sqrt(k.dot(w.row(i), w.row(i), c));
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return norms[i] > norms[j]; });

    out.u = Matrix(r, r);
    out.v = Matrix(r, c);
    const double sigma_max = norms[order[0]];
    for (std::size_t i = 0; i < r; ++i) {
        const std::size_t src = order[i];
        out.sigma[i] = norms[src];
        // w = rot * a  =>  a = rot^T * w, so column i of u is row src of rot.
        for (std::size_t l = 0; l < r; ++l) out.u(l, i) = rot(src, l);
        if (norms[src] > sigma_max * 1e-300 && norms[src] > 0.0) {
            const double inv = 1.0 / norms[src];
            for (std::size_t j = 0; j < c; ++j) out.v(i, j) = w(src, j) * inv;
        }
    }
    return out;
}

double spectral_norm(const Matrix& a) {
    if (a.rows == 0 || a.cols == 0 || a.data.empty()) return 0.0;
    if (a.rows > a.cols) return svd_thin(a.transposed()).sigma[0];
    return svd_thin(a).sigma[0];
}

} // namespace grassmatch
