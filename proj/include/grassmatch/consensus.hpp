#pragma once

#include <optional>
#include <span>

#include "grassmatch/qap.hpp"

namespace grassmatch {

enum class ConsensusMode { BestMatch, WeightedSum };

struct ConsensusOptions {
    ConsensusMode mode = ConsensusMode::BestMatch;
    double epsilon = 1e-6;            // target weight of a worst-case trial
    std::optional<double> c_override; // weight sharpness, else default_c
};

// log(1/epsilon) / (4 d^2): the smallest sharpness that pushes a worst-case
// objective (distance 2d from the optimum) down to weight epsilon.
double default_c(std::size_t d, double epsilon);

// exp(-c (objective - d)^2), in (0, 1], equal to 1 exactly at the optimum.
double weight(double objective, std::size_t d, double c);

// Single matching from the trial permutations: BestMatch takes the trial
// with the largest trace objective (equivalently the smallest Frobenius
// distance of the conjugated projectors); WeightedSum projects
// sum_i w(S_i) S_i to the nearest permutation. Accumulation runs in trial
// order, so the result is independent of how the trials were scheduled.
Permutation combine(std::span<const QapTrialResult> trials, const Projector& px,
                    const Projector& py, const ConsensusOptions& opts);

// Same combination on slim per-trial data; the pipeline uses this so N
// trials do not keep N relaxed matrices alive.
Permutation combine_trials(std::span<const Permutation> perms,
                           std::span<const double> objectives, std::size_t d,
                           const ConsensusOptions& opts);

} // namespace grassmatch
