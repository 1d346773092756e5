#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "roomqd/era.hpp"

namespace roomqd {

// Small self-contained SVG renderers for the analysis exports. Output is a
// pure function of the inputs (fixed number formatting, no timestamps).

/// Hexagon heat map; lighter means more rooms. `mark` is drawn as an
/// orange dot (the target room's scores).
std::string hexbin_svg(const std::vector<HexBin>& bins, std::string_view x_label, std::string_view y_label,
                       std::optional<std::pair<double, double>> mark = std::nullopt);

/// Score/fitness scatter with an optional vertical orange line at `mark_x`.
std::string scatter_svg(const DimensionFitness& series, std::optional<double> mark_x = std::nullopt);

/// Mean (with 95% band) and max fitness per bucket; gaps for empty buckets.
std::string fitness_over_time_svg(const std::vector<BucketFitness>& series);

/// Grid of elite rooms laid out like the archive (first dimension on x,
/// second on y growing upward), fitness printed in each cell's corner.
/// Only the first two dimensions are drawn; others must be 1 wide or the
/// grid is flattened row by row.
std::string elite_grid_svg(const EliteBroadcast& broadcast);

}  // namespace roomqd
