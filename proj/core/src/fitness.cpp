#include "roomqd/fitness.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace roomqd {

double door_safety(const Room& room) {
  if (room.count(Tile::Enemy) == 0) return 1.0;
  const int n = room.size();
  const int cols = room.cols();
  const double norm = room.cols() + room.rows() - 2;
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::queue<int> frontier;
  double sum = 0;
  for (const auto& d : room.doors()) {
    std::fill(dist.begin(), dist.end(), -1);
    const int start = room.index(d);
    dist[static_cast<std::size_t>(start)] = 0;
    frontier.push(start);
    double safety = 1.0;
    while (!frontier.empty()) {
      const int cur = frontier.front();
      frontier.pop();
      if (room.at(cur) == Tile::Enemy) {
        safety = std::min(1.0, dist[static_cast<std::size_t>(cur)] / norm);
        break;
      }
      const int x = cur % cols;
      const int nbs[4] = {x > 0 ? cur - 1 : -1, x + 1 < cols ? cur + 1 : -1, cur - cols, cur + cols};
      for (int nb : nbs) {
        if (nb < 0 || nb >= n || dist[static_cast<std::size_t>(nb)] >= 0 || !is_passable(room.at(nb))) continue;
        dist[static_cast<std::size_t>(nb)] = dist[static_cast<std::size_t>(cur)] + 1;
        frontier.push(nb);
      }
    }
    frontier = {};
    sum += safety;
  }
  return sum / static_cast<double>(room.doors().size());
}

double enemy_ratio(const Room& room) {
  return static_cast<double>(room.count(Tile::Enemy)) / room.passable_count();
}

double treasure_ratio(const Room& room) {
  return static_cast<double>(room.count(Tile::Treasure)) / room.passable_count();
}

double chamber_coverage(const Room& room, const PatternReport& report) {
  return static_cast<double>(report.cells_of(SpatialKind::Chamber)) / room.passable_count();
}

FitnessContext FitnessContext::build(Room target, LeniencyWeights weights) {
  weights.validate();
  PatternReport report = detect(target);
  MicroProfile profile = micro_profile(target, report);
  const double er = enemy_ratio(target);
  const double tr = treasure_ratio(target);
  const double cov = chamber_coverage(target, report);
  return FitnessContext{std::move(target), std::move(report), profile, er, tr, cov, weights};
}

InventorialTerms inventorial_terms(const Room& room, const FitnessContext& ctx) {
  return {1.0 - std::abs(enemy_ratio(room) - ctx.target_enemy_ratio),
          1.0 - std::abs(treasure_ratio(room) - ctx.target_treasure_ratio), door_safety(room)};
}

SpatialTerms spatial_terms(const Room& room, const PatternReport& report, const FitnessContext& ctx) {
  const double chambers = report.count(SpatialKind::Chamber);
  const double passable = room.passable_count();
  const double loose = report.cells_of(SpatialKind::Connector) + report.cells_of(SpatialKind::Nothing);
  return {1.0 - std::abs(chamber_coverage(room, report) - ctx.target_coverage),
          std::min(1.0, static_cast<double>(report.meso.size()) / std::max(1.0, chambers)),
          1.0 - loose / passable};
}

FitnessValue evaluate(const Room& room, const PatternReport& report, const FitnessContext& ctx) {
  const auto inv = inventorial_terms(room, ctx);
  const auto sp = spatial_terms(room, report, ctx);
  FitnessValue f;
  f.inventorial = (inv.enemy_ratio + inv.treasure_ratio + inv.door_safety) / 3.0;
  f.spatial = (sp.chamber_coverage + sp.meso_density + sp.corridor_quality) / 3.0;
  f.total = 0.5 * f.inventorial + 0.5 * f.spatial;
  return f;
}

DimensionScores score_dimensions(const Room& room, const PatternReport& report,
                                 const FitnessContext& ctx) {
  const MicroProfile profile = micro_profile(room, report);
  DimensionScores s{};
  s[static_cast<std::size_t>(Dimension::Symmetry)] = symmetry(room);
  s[static_cast<std::size_t>(Dimension::Similarity)] = similarity(room, ctx.target);
  s[static_cast<std::size_t>(Dimension::Nmp)] = nmp(report, room);
  s[static_cast<std::size_t>(Dimension::Nsp)] = nsp(report, room);
  s[static_cast<std::size_t>(Dimension::Linearity)] = linearity(report, room);
  s[static_cast<std::size_t>(Dimension::InnerSimilarity)] = inner_similarity(profile, ctx.target_profile);
  s[static_cast<std::size_t>(Dimension::Leniency)] = leniency(profile, door_safety(room), ctx.leniency);
  return s;
}

Evaluation evaluate_room(const Room& room, const FitnessContext& ctx) {
  const PatternReport report = detect(room);
  Evaluation e;
  e.fitness = evaluate(room, report, ctx);
  e.scores = score_dimensions(room, report, ctx);
  e.feasible = is_feasible(room);
  return e;
}

}  // namespace roomqd
