#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "grassmatch/metrics.hpp"

namespace grassmatch {

// Values above this render clamped with an overflow marker.
inline constexpr double kSvgDisplayCap = 1.5;

// Horizontal-bar panel for a sigma x lambda grid: one row group per sigma,
// one bar per lambda (longer bars = higher discrepancy level first, matching
// the row order of `records`, which is sigma-major). Data bars carry
// class="bar".
void emit_svg_bars(const std::vector<MetricsRecord>& records,
                   std::span<const double> sigmas,
                   std::span<const double> lambdas, const std::string& metric,
                   const std::string& path);

// Two-column heatmap panel (best match | weighted sum) over sigma rows and
// trial-count columns. Data cells carry class="cell".
void emit_svg_heatmap_pair(const std::vector<MetricsRecord>& best,
                           const std::vector<MetricsRecord>& weighted,
                           std::span<const double> sigmas,
                           std::span<const std::size_t> trial_counts,
                           const std::string& metric, const std::string& path);

// Pulls a metric by CSV column name ("delta_L", "delta_Y", "delta_X",
// "delta_H"); NaN when delta_H is absent.
double metric_value(const MetricsRecord& rec, const std::string& metric);

} // namespace grassmatch
