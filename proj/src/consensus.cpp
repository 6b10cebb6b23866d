#include "grassmatch/consensus.hpp"

#include <cmath>
#include <vector>

#include "grassmatch/errors.hpp"

namespace grassmatch {

double default_c(std::size_t d, double epsilon) {
    if (d < 1) throw EmptyInput("default_c: d < 1");
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw BadCondition("default_c: epsilon outside (0,1)");
    }
    const double dd = static_cast<double>(d);
    return std::log(1.0 / epsilon) / (4.0 * dd * dd);
}

double weight(double objective, std::size_t d, double c) {
    const double gap = objective - static_cast<double>(d);
    return std::exp(-c * gap * gap);
}

Permutation combine_trials(std::span<const Permutation> perms,
                           std::span<const double> objectives, std::size_t d,
                           const ConsensusOptions& opts) {
    if (perms.empty()) throw EmptyInput("combine: no trials");
    if (perms.size() != objectives.size()) {
        throw SizeMismatch("combine: trial/objective counts disagree");
    }
    const std::size_t n = perms.front().size();
    for (const Permutation& p : perms) {
        if (p.size() != n) throw SizeMismatch("combine: inconsistent trial size");
    }

    if (opts.mode == ConsensusMode::BestMatch) {
        std::size_t best = 0;
        for (std::size_t t = 1; t < perms.size(); ++t) {
            if (objectives[t] > objectives[best]) best = t;
        }
        return perms[best];
    }

    const double c = opts.c_override ? *opts.c_override
                                     : default_c(d, opts.epsilon);
    // Permutations are sparse: accumulate w(S_t) into one dense matrix in
    // fixed trial order, then one LAP.
    Matrix acc(n, n);
    for (std::size_t t = 0; t < perms.size(); ++t) {
        const double w = weight(objectives[t], d, c);
        const Permutation& p = perms[t];
        for (std::size_t i = 0; i < n; ++i) {
            acc(i, static_cast<std::size_t>(p.map[i])) += w;
        }
    }
    return lap_max(acc);
}

Permutation combine(std::span<const QapTrialResult> trials, const Projector& px,
                    const Projector& py, const ConsensusOptions& opts) {
    if (trials.empty()) throw EmptyInput("combine: no trials");
    if (px.size() != py.size()) throw SizeMismatch("combine: projector sizes disagree");
    std::vector<Permutation> perms;
    std::vector<double> objectives;
    perms.reserve(trials.size());
    objectives.reserve(trials.size());
    for (const QapTrialResult& t : trials) {
        perms.push_back(t.projected);
        objectives.push_back(t.objective);
    }
    return combine_trials(perms, objectives, px.rank, opts);
}

} // namespace grassmatch
