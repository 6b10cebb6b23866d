#include "grassmatch/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "grassmatch/errors.hpp"
#include "grassmatch/kernels.hpp"
#include "grassmatch/svd.hpp"
#include "grassmatch/thread_pool.hpp"

namespace grassmatch {

Matrix recover_linear(const PointCloud& x, const PointCloud& y,
                      std::span<const std::int32_t> matching) {
    const std::size_t d = x.dim();
    const std::size_t m = x.count();
    if (y.dim() != d) throw SizeMismatch("recover_linear: dimensions disagree");
    if (matching.size() != m) {
        throw SizeMismatch("recover_linear: matching size " +
                           std::to_string(matching.size()) + " vs m = " +
                           std::to_string(m));
    }
    for (const std::int32_t j : matching) {
        if (j < 0 || static_cast<std::size_t>(j) >= y.count()) {
            throw SizeMismatch("recover_linear: matching index out of range");
        }
    }

    // Matched y columns in x order.
    Matrix ym(d, m);
    for (std::size_t i = 0; i < d; ++i) {
        const double* src = y.data.row(i);
        double* dst = ym.row(i);
        for (std::size_t j = 0; j < m; ++j) {
            dst[j] = src[static_cast<std::size_t>(matching[j])];
        }
    }

    // L = Ym V^T diag(1/sigma) U^T from x = U diag(sigma) V.
    const Svd svd = svd_thin(x.data);
    if (svd.sigma[d - 1] <= 1e-12 * svd.sigma[0]) {
        throw RankDeficient("recover_linear: x has (numerically) deficient rank");
    }
    const auto& k = kernels::active();
    Matrix t(d, d); // Ym V^T
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            t(i, j) = k.dot(ym.row(i), svd.v.row(j), m) / svd.sigma[j];
        }
    }
    Matrix l(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double acc = 0.0;
            for (std::size_t q = 0; q < d; ++q) acc += t(i, q) * svd.u(j, q);
            l(i, j) = acc;
        }
    }
    return l;
}

namespace {

struct TrialSet {
    std::vector<Permutation> perms;
    std::vector<double> objectives;
};

TrialSet run_trials(const Projector& px, const Projector& py,
                    const RegistrationOptions& opts) {
    TrialSet set;
    set.perms.resize(opts.trials);
    set.objectives.resize(opts.trials);
    const std::size_t n = px.size();
    parallel_for(opts.trials, opts.threads, [&](std::size_t t) {
        Rng rng = Rng::derive(opts.master_seed, t);
        const DoublyStochastic init = random_doubly_stochastic(n, rng);
        QapTrialResult trial = faq_trial(px, py, init, opts.faq);
        set.perms[t] = std::move(trial.projected);
        set.objectives[t] = trial.objective;
    });
    return set;
}

RegistrationResult finalize(const PointCloud& x, const PointCloud& y,
                            const PointCloud& xc, const std::vector<double>& bx,
                            const TrialSet& set, std::size_t rank,
                            const ConsensusOptions& consensus) {
    const std::size_t d = x.dim();
    const std::size_t m = x.count();

    const Permutation s0 =
        combine_trials(set.perms, set.objectives, rank, consensus);

    RegistrationResult res;
    res.mode_used = consensus.mode;
    res.trial_objectives = set.objectives;
    res.best_objective = set.objectives[0];
    for (const double o : set.objectives) {
        res.best_objective = std::max(res.best_objective, o);
    }
    res.matching.assign(s0.map.begin(), s0.map.begin() + static_cast<long>(m));

    // Center the matched y columns on their own barycenter so the linear
    // part is unbiased under point discrepancy; the translation then ties
    // the raw clouds back together.
    std::vector<double> by(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        const double* row = y.data.row(i);
        for (const std::int32_t j : res.matching) {
            by[i] += row[static_cast<std::size_t>(j)];
        }
        by[i] /= static_cast<double>(m);
    }
    PointCloud y_shifted = y;
    for (std::size_t i = 0; i < d; ++i) {
        double* row = y_shifted.data.row(i);
        for (std::size_t j = 0; j < y.count(); ++j) row[j] -= by[i];
    }

    res.linear_map = recover_linear(xc, y_shifted, res.matching);

    res.translation.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
        double acc = by[i];
        for (std::size_t j = 0; j < d; ++j) acc -= res.linear_map(i, j) * bx[j];
        res.translation[i] = acc;
    }
    return res;
}

} // namespace

RegistrationResult register_clouds(const PointCloud& x, const PointCloud& y,
                                   const RegistrationOptions& opts) {
    const std::vector<ConsensusMode> modes{opts.consensus.mode};
    return std::move(register_clouds_modes(x, y, opts, modes).front());
}

std::vector<RegistrationResult> register_clouds_modes(
    const PointCloud& x, const PointCloud& y, const RegistrationOptions& opts,
    std::span<const ConsensusMode> modes) {
    const auto start = std::chrono::steady_clock::now();
    if (opts.trials < 1) throw EmptyInput("register_clouds: trials < 1");
    if (x.dim() != y.dim()) {
        throw SizeMismatch("register_clouds: cloud dimensions disagree");
    }
    const std::size_t m = x.count();
    const std::size_t n = y.count();
    if (m > n) {
        throw SizeMismatch("register_clouds: x has more points than y (" +
                           std::to_string(m) + " > " + std::to_string(n) + ")");
    }

    const std::vector<double> bx = barycenter(x);
    const PointCloud xc = center(x);
    const PointCloud yc = center(y);

    Projector px = projector(xc);
    const Projector py = projector(yc);
    if (m < n) px = pad_projector(px, n);

    const TrialSet set = run_trials(px, py, opts);

    std::vector<RegistrationResult> out;
    out.reserve(modes.size());
    for (const ConsensusMode mode : modes) {
        ConsensusOptions consensus = opts.consensus;
        consensus.mode = mode;
        out.push_back(finalize(x, y, xc, bx, set, px.rank, consensus));
    }
    const std::chrono::duration<double> elapsed =
        std::chrono::steady_clock::now() - start;
    for (auto& r : out) r.elapsed_seconds = elapsed.count();
    return out;
}

} // namespace grassmatch
