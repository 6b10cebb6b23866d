#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "grassmatch/consensus.hpp"
#include "grassmatch/grassmann.hpp"
#include "grassmatch/qap.hpp"

namespace grassmatch {

struct RegistrationOptions {
    std::size_t trials = 1024;
    std::uint64_t master_seed = 0;
    FaqOptions faq;
    ConsensusOptions consensus;
    unsigned threads = 0; // 0 = hardware count
};

struct RegistrationResult {
    Matrix linear_map;                   // d x d
    std::vector<std::int32_t> matching;  // x column -> y column, injective
    std::vector<double> translation;     // maps raw x through L then + t
    std::vector<double> trial_objectives;
    double best_objective = 0.0;
    ConsensusMode mode_used = ConsensusMode::BestMatch;
    double elapsed_seconds = 0.0;
};

// Least-squares L minimizing ||L x - y[:, matching]||_F over the matched
// pairs; x must be centered and full-rank. Solved through the SVD of x.
Matrix recover_linear(const PointCloud& x, const PointCloud& y,
                      std::span<const std::int32_t> matching);

// Full run: center both clouds, build projectors (padding the smaller side
// on point discrepancy), run the seeded trials on a work pool, combine,
// truncate to the x columns and recover the linear map plus translation.
// Identical inputs give a bitwise-identical result for any worker count:
// trial t draws from a stream derived from (master_seed, t) and aggregation
// runs in trial order.
RegistrationResult register_clouds(const PointCloud& x, const PointCloud& y,
                                   const RegistrationOptions& opts);

// Same run finalized once per requested consensus mode on one shared trial
// set (the mode study's paired design). Results are ordered like `modes`.
std::vector<RegistrationResult> register_clouds_modes(
    const PointCloud& x, const PointCloud& y, const RegistrationOptions& opts,
    std::span<const ConsensusMode> modes);

} // namespace grassmatch
