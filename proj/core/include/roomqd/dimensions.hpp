#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "roomqd/patterns.hpp"
#include "roomqd/room.hpp"

namespace roomqd {

enum class Dimension : std::uint8_t {
  Symmetry,
  Similarity,
  Nmp,
  Nsp,
  Linearity,
  InnerSimilarity,
  Leniency,
};

inline constexpr std::size_t kDimensionCount = 7;
inline constexpr std::array<Dimension, kDimensionCount> kAllDimensions = {
    Dimension::Symmetry,  Dimension::Similarity,      Dimension::Nmp,      Dimension::Nsp,
    Dimension::Linearity, Dimension::InnerSimilarity, Dimension::Leniency};

using DimensionScores = std::array<double, kDimensionCount>;

/// Stable wire name ("symmetry", "inner_similarity", ...).
std::string_view name(Dimension d) noexcept;
std::optional<Dimension> parse_dimension(std::string_view s) noexcept;

struct DimensionDescriptor {
  Dimension kind = Dimension::Symmetry;
  int granularity = 5;
  bool operator==(const DimensionDescriptor&) const = default;
};

struct LeniencyWeights {
  double enemy_sparsity = 0.4;
  double enemy_density = 0.4;
  double door_safety = 0.2;

  void validate() const;  // throws std::invalid_argument
};

inline constexpr double kDensityThresholdEnemy = 4.0;
inline constexpr double kDensityThresholdTreasure = 4.0;
inline constexpr double kDensityThresholdWall = 6.0;
inline constexpr double kSpatialPatternScale = 4.0;
inline constexpr std::size_t kSimplePathCap = 1000;

double density_threshold(MicroKind k) noexcept;

struct DensitySparsity {
  double density = 0.0;
  double sparsity = 0.0;
};

/// Density/sparsity of each micro-pattern kind plus raw tile counts.
struct MicroProfile {
  std::array<DensitySparsity, 3> kinds{};
  std::array<int, 3> tiles{};

  const DensitySparsity& of(MicroKind k) const noexcept { return kinds[static_cast<std::size_t>(k)]; }
  int tiles_of(MicroKind k) const noexcept { return tiles[static_cast<std::size_t>(k)]; }
};

MicroProfile micro_profile(const Room& room, const PatternReport& report);

// Individual measures. All return values in [0, 1].

/// Best mirror agreement of walls over the vertical, horizontal and both
/// diagonal axes, divided by the total wall count. Diagonals use the centred
/// largest square of the room. A wall-free room scores 1.
double symmetry(const Room& room);

/// Fraction of tiles equal to the target's. Throws std::invalid_argument on
/// a size mismatch.
double similarity(const Room& room, const Room& target);

/// Meso-patterns over the maximum number of 3x3 chambers, clamped to 1.
double nmp(const PatternReport& report, const Room& room);

/// Spatial patterns over max(cols, rows) * 4, clamped to 1.
double nsp(const PatternReport& report, const Room& room);

/// Number of simple paths from `from` to `to`, saturating at `cap`.
std::size_t count_simple_paths(const std::vector<std::vector<int>>& adjacency, int from, int to,
                               std::size_t cap = kSimplePathCap);

/// 1 - paths / (patterns + door neighbours), clamped to [0, 1].
double linearity_score(std::size_t paths_between_doors, std::size_t spatial_patterns,
                       std::size_t neighbors_per_door);

/// Linearity on the pattern graph: simple paths are summed over every
/// unordered pair of distinct door-bearing patterns; door neighbours are the
/// graph degree of each door's pattern, summed over doors.
double linearity(const PatternReport& report, const Room& room);

/// Euclidean distance between cluster centroids.
double cluster_distance(const MicroCluster& a, const MicroCluster& b);

/// Mean over clusters of min(1, |cluster| / threshold); 0 with no clusters.
double density(std::span<const MicroCluster> clusters, MicroKind kind);

/// Mean pairwise centroid distance over ordered pairs, each divided by the
/// room's tile count; 0 with fewer than two clusters.
double sparsity(std::span<const MicroCluster> clusters, const Room& room);

/// Summed |density| and |sparsity| differences over the three kinds, in [0, 6].
double inner_distance(const MicroProfile& room, const MicroProfile& target);

/// max(0, 1 - inner_distance / 6): 1 means identical distributions.
double inner_similarity(const MicroProfile& room, const MicroProfile& target);

/// log10 floored at zero; 0 for values below 1.
double safe_log10(double v) noexcept;

struct LeniencyTerms {
  double non_lenient = 0.0;
  double lenient = 0.0;
  double score = 0.0;
};

LeniencyTerms leniency_terms(const MicroProfile& profile, double door_safety, const LeniencyWeights& w);
double leniency(const MicroProfile& profile, double door_safety, const LeniencyWeights& w);

/// floor(score * granularity) clamped to [0, granularity - 1].
int bin(double score, int granularity) noexcept;
inline int bin(double score, const DimensionDescriptor& d) noexcept { return bin(score, d.granularity); }

}  // namespace roomqd
