#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "grassmatch/metrics.hpp"
#include "grassmatch/pipeline.hpp"
#include "grassmatch/synth.hpp"

namespace grassmatch {

// sigma x lambda benchmark over seeded scenarios; `batch` registrations are
// averaged per cell. The specimen is either a fresh Uniform([0,1]^d) cloud of
// `points` per scenario or the cloud loaded from `cloud_file`.
struct GridSpec {
    std::vector<double> sigmas{0.0, 0.01, 0.05, 0.1, 0.15, 0.2};
    std::vector<double> lambdas{1.0, 0.95, 0.90, 0.85, 0.8, 0.7, 0.6, 0.5};
    std::size_t batch = 10;
    std::size_t trials = 1024;
    double cond = 3.0;
    std::size_t d = 3;
    std::size_t points = 351;
    std::optional<std::string> cloud_file;
    std::uint64_t master_seed = 0;
    unsigned threads = 0;
    FaqOptions faq;
    ConsensusOptions consensus;
};

inline constexpr const char* kGridCsvHeader =
    "sigma,lambda,d_sigma,d_lambda,delta_L,delta_Y,delta_X";

// All error statistics of one registration against its ground truth. The
// relative map/image errors are computed on centered data (the model has
// t = 0 after centering); d_sigma and d_lambda on the raw matrices as built.
MetricsRecord score(const GroundTruth& gt, const RegistrationResult& reg);

// One CSV line per (sigma, lambda) cell, in grid order, "%.6f" fields, LF
// endings. A failed cell logs and records NaN metrics instead of aborting.
// Cell seeds derive from (master seed, sigma index, lambda index, batch
// index), so output is byte-identical for any thread count.
std::vector<MetricsRecord> run_grid(const GridSpec& grid, std::ostream& csv,
                                    std::ostream* log);

// Best-match vs weighted-sum comparison on paired scenarios over a
// sigma x trial-count grid (lambda = 1, so delta_H is defined).
struct ModeStudySpec {
    std::size_t points = 100;
    double cond = 3.0;
    std::size_t d = 3;
    std::vector<double> sigmas{0.05, 0.10, 0.15, 0.20, 0.25};
    std::vector<std::size_t> trial_counts{32, 64, 128, 256, 512, 1024};
    std::size_t batch = 10;
    std::uint64_t master_seed = 0;
    unsigned threads = 0;
    FaqOptions faq;
    double epsilon = 1e-6;
    std::optional<double> c_override;
};

inline constexpr const char* kModeStudyCsvHeader =
    "sigma,trials,delta_L,delta_Y,delta_X,delta_H";

struct ModeStudyResult {
    std::vector<MetricsRecord> best;     // sigma-major over trial counts
    std::vector<MetricsRecord> weighted;
};

// Each cell runs `batch` scenarios; both modes are finalized from the same
// trial sets, so per-cell differences are purely the consensus rule.
ModeStudyResult run_mode_study(const ModeStudySpec& spec, std::ostream& best_csv,
                               std::ostream& weighted_csv, std::ostream* log);

} // namespace grassmatch
