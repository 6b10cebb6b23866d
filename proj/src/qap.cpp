#include "grassmatch/qap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "grassmatch/errors.hpp"
#include "grassmatch/kernels.hpp"

namespace grassmatch {

double DoublyStochastic::balance_error() const {
    const auto& k = kernels::active();
    const std::size_t n = matrix.rows;
    double err = 0.0;
    std::vector<double> col_sums(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        err = std::max(err, std::fabs(k.sum(matrix.row(i), n) - 1.0));
        k.axpy(col_sums.data(), 1.0, matrix.row(i), n);
    }
    for (std::size_t j = 0; j < n; ++j) {
        err = std::max(err, std::fabs(col_sums[j] - 1.0));
    }
    return err;
}

double DoublyStochastic::min_entry() const {
    double m = 1.0;
    for (const double x : matrix.data) m = std::min(m, x);
    return m;
}

double qap_objective(const Projector& px, const Projector& py,
                     const Permutation& s) {
    const std::size_t n = px.size();
    if (py.size() != n || s.size() != n) {
        throw SizeMismatch("qap_objective: sizes disagree");
    }

    if (!px.basis.empty() && !py.basis.empty()) {
        // trace = ||Vx S Vy^T||_F^2 via B[k][l] = sum_i Vx[k][i] Vy[l][s(i)].
        const std::size_t dx = px.basis.rows;
        const std::size_t dy = py.basis.rows;
        double acc = 0.0;
        for (std::size_t kk = 0; kk < dx; ++kk) {
            const double* vx = px.basis.row(kk);
            for (std::size_t l = 0; l < dy; ++l) {
                const double* vy = py.basis.row(l);
                double b = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    b += vx[i] * vy[static_cast<std::size_t>(s.map[i])];
                }
                acc += b * b;
            }
        }
        return acc;
    }

    // Dense path: trace = sum_{a,b} P_X[a][b] * P_Y[s(a)][s(b)].
    double acc = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        const double* pxa = px.matrix.row(a);
        const double* pys = py.matrix.row(static_cast<std::size_t>(s.map[a]));
        for (std::size_t b = 0; b < n; ++b) {
            acc += pxa[b] * pys[static_cast<std::size_t>(s.map[b])];
        }
    }
    return acc;
}

DoublyStochastic random_doubly_stochastic(std::size_t n, Rng& rng) {
    if (n == 0) throw EmptyInput("random_doubly_stochastic: n = 0");
    Matrix m(n, n);
    for (double& x : m.data) x = rng.uniform() + 0.1;

    const auto& k = kernels::active();
    std::vector<double> col_scale(n);
    DoublyStochastic out;
    for (int round = 0; round < 50; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            k.scale(m.row(i), 1.0 / k.sum(m.row(i), n), n);
        }
        std::fill(col_scale.begin(), col_scale.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) k.axpy(col_scale.data(), 1.0, m.row(i), n);
        for (std::size_t j = 0; j < n; ++j) col_scale[j] = 1.0 / col_scale[j];
        for (std::size_t i = 0; i < n; ++i) k.mul_ew(m.row(i), col_scale.data(), n);

        out.matrix = std::move(m);
        if (out.balance_error() <= 1e-9) return out;
        m = std::move(out.matrix);
    }
    out.matrix = std::move(m);
    return out;
}

namespace {

// b = a * vy^T, the small d x d product of a factored iterate.
void factor_product(const Matrix& a, const Matrix& vy, Matrix& b) {
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < vy.rows; ++j) {
            b(i, j) = k.dot(a.row(i), vy.row(j), a.cols);
        }
    }
}

double frob_sq(const Matrix& m) {
    double acc = 0.0;
    for (const double x : m.data) acc += x * x;
    return acc;
}

} // namespace

QapTrialResult faq_trial(const Projector& px, const Projector& py,
                         const DoublyStochastic& init, const FaqOptions& opts) {
    const std::size_t n = px.size();
    if (py.size() != n || init.size() != n) {
        throw SizeMismatch("faq_trial: sizes disagree");
    }
    if (px.basis.empty() || py.basis.empty()) {
        throw SizeMismatch("faq_trial: projectors need their factors");
    }
    const auto& k = kernels::active();
    if (!k.all_finite(init.matrix.data.data(), init.matrix.data.size())) {
        throw NonFinite("faq_trial: non-finite start");
    }

    const Matrix& vx = px.basis; // dx x n
    const Matrix& vy = py.basis; // dy x n
    const std::size_t dx = vx.rows;
    const std::size_t dy = vy.rows;

    QapTrialResult res;
    res.relaxed = init;
    Matrix& s = res.relaxed.matrix;

    // a = Vx S, maintained incrementally across FW steps.
    Matrix a(dx, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t t = 0; t < dx; ++t) {
            k.axpy(a.row(t), vx(t, i), s.row(i), n);
        }
    }

    Matrix b_s(dx, dy), b_q(dx, dy);
    Matrix bsvy(dx, n); // B_S * Vy
    Matrix grad(n, n);  // gradient profit, Vx^T (B_S Vy)
    Matrix vxq(dx, n);

    factor_product(a, vy, b_s);
    double objective = frob_sq(b_s);
    res.objective_trace.push_back(objective);

    std::vector<const double*> vy_rows(dy);
    for (std::size_t l = 0; l < dy; ++l) vy_rows[l] = vy.row(l);
    std::vector<const double*> bsvy_rows(dx);
    for (std::size_t t = 0; t < dx; ++t) bsvy_rows[t] = bsvy.row(t);
    std::vector<double> coeff(std::max(dx, dy));

    bool converged = false;
    std::size_t iter = 0;
    for (; iter < opts.max_iters; ++iter) {
        // Direction LAP on Vx^T (B_S Vy); the gradient's factor 2 does not
        // move the argmax.
        for (std::size_t t = 0; t < dx; ++t) {
            for (std::size_t l = 0; l < dy; ++l) coeff[l] = b_s(t, l);
            k.weighted_row_sum(bsvy.row(t), coeff.data(), vy_rows.data(), dy, n);
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t t = 0; t < dx; ++t) coeff[t] = vx(t, i);
            k.weighted_row_sum(grad.row(i), coeff.data(), bsvy_rows.data(), dx, n);
        }

        const Permutation q = lap_max(grad);
        const Permutation qinv = q.inverse();

        // B_Q from Vx Q (columns of Vx shuffled by q^-1).
        for (std::size_t t = 0; t < dx; ++t) {
            const double* src = vx.row(t);
            double* dst = vxq.row(t);
            for (std::size_t j = 0; j < n; ++j) {
                dst[j] = src[static_cast<std::size_t>(qinv.map[j])];
            }
        }
        factor_product(vxq, vy, b_q);

        // f(S + eta D) = f + eta*lin + eta^2*quad with D = Q - S.
        double quad = 0.0, lin = 0.0;
        for (std::size_t t = 0; t < b_s.data.size(); ++t) {
            const double diff = b_q.data[t] - b_s.data[t];
            quad += diff * diff;
            lin += 2.0 * b_s.data[t] * diff;
        }
        double eta = 0.0;
        if (quad > 0.0) {
            eta = (lin + quad >= 0.0) ? 1.0 : 0.0; // convex: best endpoint
        } else if (quad < 0.0) {
            eta = std::clamp(-lin / (2.0 * quad), 0.0, 1.0);
        } else {
            eta = lin > 0.0 ? 1.0 : 0.0;
        }

        if (eta > 0.0) {
            k.scale(s.data.data(), 1.0 - eta, s.data.size());
            for (std::size_t i = 0; i < n; ++i) {
                s(i, static_cast<std::size_t>(q.map[i])) += eta;
            }
            k.scale(a.data.data(), 1.0 - eta, a.data.size());
            k.axpy(a.data.data(), eta, vxq.data.data(), a.data.size());
            factor_product(a, vy, b_s);
        }

        const double next_objective = frob_sq(b_s);
        res.objective_trace.push_back(next_objective);
        const double change = std::fabs(next_objective - objective);
        objective = next_objective;
        if (change <= opts.tol * std::max(1.0, std::fabs(objective))) {
            converged = true;
            ++iter;
            break;
        }
    }

    res.iterations = iter;
    res.converged = converged;
    res.projected = lap_max(s);
    res.objective = qap_objective(px, py, res.projected);
    return res;
}

} // namespace grassmatch
