#include "roomqd/dimensions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roomqd {

std::string_view name(Dimension d) noexcept {
  switch (d) {
    case Dimension::Symmetry: return "symmetry";
    case Dimension::Similarity: return "similarity";
    case Dimension::Nmp: return "nmp";
    case Dimension::Nsp: return "nsp";
    case Dimension::Linearity: return "linearity";
    case Dimension::InnerSimilarity: return "inner_similarity";
    case Dimension::Leniency: return "leniency";
  }
  return "?";
}

std::optional<Dimension> parse_dimension(std::string_view s) noexcept {
  for (Dimension d : kAllDimensions) {
    if (name(d) == s) return d;
  }
  return std::nullopt;
}

void LeniencyWeights::validate() const {
  if (enemy_sparsity < 0 || enemy_density < 0 || door_safety < 0) {
    throw std::invalid_argument("leniency weights must be non-negative");
  }
  if (std::abs(enemy_sparsity + enemy_density + door_safety - 1.0) > 1e-9) {
    throw std::invalid_argument("leniency weights must sum to 1");
  }
}

double density_threshold(MicroKind k) noexcept {
  switch (k) {
    case MicroKind::Enemy: return kDensityThresholdEnemy;
    case MicroKind::Treasure: return kDensityThresholdTreasure;
    case MicroKind::Wall: return kDensityThresholdWall;
  }
  return 1.0;
}

MicroProfile micro_profile(const Room& room, const PatternReport& report) {
  MicroProfile p;
  for (MicroKind k : kMicroKinds) {
    const auto& clusters = report.clusters(k);
    const auto i = static_cast<std::size_t>(k);
    p.kinds[i] = {density(clusters, k), sparsity(clusters, room)};
    int tiles = 0;
    for (const auto& c : clusters) tiles += static_cast<int>(c.members.size());
    p.tiles[i] = tiles;
  }
  return p;
}

double symmetry(const Room& room) {
  const int cols = room.cols();
  const int rows = room.rows();
  const int walls = room.count(Tile::Wall);
  if (walls == 0) return 1.0;
  auto wall = [&](int x, int y) { return room.at(Coord{x, y}) == Tile::Wall; };

  int vertical = 0;
  int horizontal = 0;
  for (int y = 0; y < rows; ++y) {
    for (int x = 0; x < cols; ++x) {
      if (!wall(x, y)) continue;
      if (wall(cols - 1 - x, y)) ++vertical;
      if (wall(x, rows - 1 - y)) ++horizontal;
    }
  }
  const int side = std::min(cols, rows);
  const int ox = (cols - side) / 2;
  const int oy = (rows - side) / 2;
  int diagonal = 0;
  int anti = 0;
  for (int j = 0; j < side; ++j) {
    for (int i = 0; i < side; ++i) {
      if (!wall(ox + i, oy + j)) continue;
      if (wall(ox + j, oy + i)) ++diagonal;
      if (wall(ox + side - 1 - j, oy + side - 1 - i)) ++anti;
    }
  }
  const int best = std::max({vertical, horizontal, diagonal, anti});
  return static_cast<double>(best) / walls;
}

double similarity(const Room& room, const Room& target) {
  if (room.cols() != target.cols() || room.rows() != target.rows()) {
    throw std::invalid_argument("similarity needs rooms of equal size");
  }
  const auto a = room.tiles();
  const auto b = target.tiles();
  int differing = 0;
  for (std::size_t i = 0; i < a.size(); ++i) differing += a[i] != b[i] ? 1 : 0;
  const int total = room.size();
  return static_cast<double>(total - differing) / total;
}

double nmp(const PatternReport& report, const Room& room) {
  const int max_chambers = (room.cols() / 3) * (room.rows() / 3);
  return std::min(static_cast<double>(report.meso.size()) / max_chambers, 1.0);
}

double nsp(const PatternReport& report, const Room& room) {
  const double denom = std::max(room.cols(), room.rows()) * kSpatialPatternScale;
  return std::min(static_cast<double>(report.spatial.size()) / denom, 1.0);
}

namespace {

// Upper bound on DFS expansions per pair; past it the pair counts as saturated.
constexpr std::size_t kPathSearchBudget = 200000;

struct PathCounter {
  const std::vector<std::vector<int>>& adj;
  int target;
  std::size_t cap;
  std::vector<std::uint8_t> on_path;
  std::size_t found = 0;
  std::size_t expansions = 0;

  void walk(int node) {
    if (found >= cap) return;
    if (++expansions > kPathSearchBudget) {
      found = cap;
      return;
    }
    if (node == target) {
      ++found;
      return;
    }
    on_path[static_cast<std::size_t>(node)] = 1;
    for (int nb : adj[static_cast<std::size_t>(node)]) {
      if (!on_path[static_cast<std::size_t>(nb)]) walk(nb);
      if (found >= cap) break;
    }
    on_path[static_cast<std::size_t>(node)] = 0;
  }
};

}  // namespace

std::size_t count_simple_paths(const std::vector<std::vector<int>>& adjacency, int from, int to,
                               std::size_t cap) {
  if (from == to) return 0;
  PathCounter pc{adjacency, to, cap, std::vector<std::uint8_t>(adjacency.size(), 0)};
  pc.walk(from);
  return std::min(pc.found, cap);
}

double linearity_score(std::size_t paths_between_doors, std::size_t spatial_patterns,
                       std::size_t neighbors_per_door) {
  const double denom = static_cast<double>(spatial_patterns + neighbors_per_door);
  if (denom <= 0) return 1.0;
  return std::clamp(1.0 - static_cast<double>(paths_between_doors) / denom, 0.0, 1.0);
}

double linearity(const PatternReport& report, const Room& room) {
  const auto door_patterns = report.door_patterns();
  std::size_t paths = 0;
  for (std::size_t i = 0; i < door_patterns.size(); ++i) {
    for (std::size_t j = i + 1; j < door_patterns.size(); ++j) {
      paths += count_simple_paths(report.adjacency, door_patterns[i], door_patterns[j]);
    }
  }
  std::size_t neighbors = 0;
  for (const auto& d : room.doors()) {
    const int p = report.owner[static_cast<std::size_t>(room.index(d))];
    neighbors += report.adjacency[static_cast<std::size_t>(p)].size();
  }
  return linearity_score(paths, report.spatial.size(), neighbors);
}

double cluster_distance(const MicroCluster& a, const MicroCluster& b) {
  auto centroid = [](const MicroCluster& c) {
    double sx = 0;
    double sy = 0;
    for (const auto& m : c.members) {
      sx += m.x;
      sy += m.y;
    }
    const double n = static_cast<double>(c.members.size());
    return std::pair{sx / n, sy / n};
  };
  const auto [ax, ay] = centroid(a);
  const auto [bx, by] = centroid(b);
  return std::hypot(ax - bx, ay - by);
}

double density(std::span<const MicroCluster> clusters, MicroKind kind) {
  if (clusters.empty()) return 0.0;
  const double theta = density_threshold(kind);
  double sum = 0;
  for (const auto& c : clusters) sum += std::min(1.0, static_cast<double>(c.members.size()) / theta);
  return sum / static_cast<double>(clusters.size());
}

double sparsity(std::span<const MicroCluster> clusters, const Room& room) {
  const std::size_t n = clusters.size();
  if (n < 2) return 0.0;
  const double tiles = room.size();
  double sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) sum += 2.0 * cluster_distance(clusters[i], clusters[j]) / tiles;
  }
  return sum / static_cast<double>(n * (n - 1));
}

double inner_distance(const MicroProfile& room, const MicroProfile& target) {
  double d = 0;
  for (MicroKind k : kMicroKinds) {
    d += std::abs(room.of(k).density - target.of(k).density);
    d += std::abs(room.of(k).sparsity - target.of(k).sparsity);
  }
  return d;
}

double inner_similarity(const MicroProfile& room, const MicroProfile& target) {
  return std::max(0.0, 1.0 - inner_distance(room, target) / 6.0);
}

double safe_log10(double v) noexcept { return v < 1.0 ? 0.0 : std::log10(v); }

LeniencyTerms leniency_terms(const MicroProfile& profile, double door_safety, const LeniencyWeights& w) {
  const auto& en = profile.of(MicroKind::Enemy);
  const auto& tre = profile.of(MicroKind::Treasure);
  const double enemies = profile.tiles_of(MicroKind::Enemy);
  const double treasures = profile.tiles_of(MicroKind::Treasure);
  LeniencyTerms t;
  t.non_lenient = w.enemy_sparsity * safe_log10(enemies * en.sparsity) +
                  w.enemy_density * safe_log10(enemies * en.density) +
                  w.door_safety * (1.0 - door_safety);
  t.lenient = 0.5 * safe_log10(treasures * tre.sparsity) + 0.5 * safe_log10(treasures * tre.density);
  t.score = std::clamp(1.0 - (t.non_lenient - 0.5 * t.lenient), 0.0, 1.0);
  return t;
}

double leniency(const MicroProfile& profile, double door_safety, const LeniencyWeights& w) {
  return leniency_terms(profile, door_safety, w).score;
}

int bin(double score, int granularity) noexcept {
  const int b = static_cast<int>(std::floor(score * granularity));
  return std::clamp(b, 0, granularity - 1);
}

}  // namespace roomqd
