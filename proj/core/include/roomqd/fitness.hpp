#pragma once

#include "roomqd/dimensions.hpp"
#include "roomqd/patterns.hpp"
#include "roomqd/room.hpp"

namespace roomqd {

struct FitnessValue {
  double total = 0.0;
  double inventorial = 0.0;
  double spatial = 0.0;
};

struct InventorialTerms {
  double enemy_ratio = 0.0;     // closeness to the target's enemy ratio
  double treasure_ratio = 0.0;  // closeness to the target's treasure ratio
  double door_safety = 0.0;
};

struct SpatialTerms {
  double chamber_coverage = 0.0;  // closeness to the target's chamber coverage
  double meso_density = 0.0;
  double corridor_quality = 0.0;
};

/// Mean over doors of the BFS distance to the nearest reachable enemy,
/// normalised by cols + rows - 2 and clamped to 1. A door no enemy can reach
/// is fully safe.
double door_safety(const Room& room);

/// Enemies / passable tiles.
double enemy_ratio(const Room& room);
double treasure_ratio(const Room& room);
/// Fraction of passable tiles inside chambers.
double chamber_coverage(const Room& room, const PatternReport& report);

/// Snapshot of everything derived from the designer's current room.
/// Rebuilt whenever the target changes; never mutated afterwards.
struct FitnessContext {
  Room target;
  PatternReport target_report;
  MicroProfile target_profile;
  double target_enemy_ratio = 0.0;
  double target_treasure_ratio = 0.0;
  double target_coverage = 0.0;
  LeniencyWeights leniency{};

  static FitnessContext build(Room target, LeniencyWeights weights = {});
};

InventorialTerms inventorial_terms(const Room& room, const FitnessContext& ctx);
SpatialTerms spatial_terms(const Room& room, const PatternReport& report, const FitnessContext& ctx);

/// total = inventorial / 2 + spatial / 2, each half the mean of its three terms.
FitnessValue evaluate(const Room& room, const PatternReport& report, const FitnessContext& ctx);

/// Everything the search and the analytics need about one room.
struct Evaluation {
  FitnessValue fitness;
  DimensionScores scores{};
  bool feasible = false;
};

/// All seven dimension scores.
DimensionScores score_dimensions(const Room& room, const PatternReport& report,
                                 const FitnessContext& ctx);

Evaluation evaluate_room(const Room& room, const FitnessContext& ctx);

}  // namespace roomqd
