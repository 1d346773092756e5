#include "roomqd/patterns.hpp"

#include <algorithm>

namespace roomqd {

std::string_view name(SpatialKind k) noexcept {
  switch (k) {
    case SpatialKind::Chamber: return "chamber";
    case SpatialKind::Corridor: return "corridor";
    case SpatialKind::Connector: return "connector";
    case SpatialKind::Nothing: return "nothing";
  }
  return "?";
}

std::string_view name(MesoKind k) noexcept {
  switch (k) {
    case MesoKind::TreasureRoom: return "treasure_room";
    case MesoKind::GuardRoom: return "guard_room";
    case MesoKind::Ambush: return "ambush";
  }
  return "?";
}

std::string_view name(MicroKind k) noexcept {
  switch (k) {
    case MicroKind::Enemy: return "enemy";
    case MicroKind::Treasure: return "treasure";
    case MicroKind::Wall: return "wall";
  }
  return "?";
}

int PatternReport::count(SpatialKind k) const noexcept {
  return static_cast<int>(
      std::count_if(spatial.begin(), spatial.end(), [k](const auto& p) { return p.kind == k; }));
}

int PatternReport::cells_of(SpatialKind k) const noexcept {
  int n = 0;
  for (const auto& p : spatial) {
    if (p.kind == k) n += static_cast<int>(p.cells.size());
  }
  return n;
}

std::vector<int> PatternReport::door_patterns() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < spatial.size(); ++i) {
    if (spatial[i].has_door) out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

// Calls fn(neighbor_index) for each in-bounds 4-neighbor of idx.
template <typename Fn>
inline void for_neighbors(int idx, int cols, int n, Fn&& fn) {
  const int x = idx % cols;
  if (x > 0) fn(idx - 1);
  if (x + 1 < cols) fn(idx + 1);
  if (idx - cols >= 0) fn(idx - cols);
  if (idx + cols < n) fn(idx + cols);
}

struct Rect {
  int x = 0, y = 0, w = 0, h = 0;
  int area() const { return w * h; }
};

// Largest fully-available rectangle of at least 3x3, or area 0 if none.
Rect best_rectangle(const std::vector<std::uint8_t>& available, int cols, int rows) {
  // prefix[(y)*(cols+1)+x] = blocked tiles in [0,x) x [0,y)
  std::vector<int> prefix(static_cast<std::size_t>((cols + 1) * (rows + 1)), 0);
  for (int y = 0; y < rows; ++y) {
    int run = 0;
    for (int x = 0; x < cols; ++x) {
      run += available[static_cast<std::size_t>(y * cols + x)] ? 0 : 1;
      prefix[static_cast<std::size_t>((y + 1) * (cols + 1) + x + 1)] =
          prefix[static_cast<std::size_t>(y * (cols + 1) + x + 1)] + run;
    }
  }
  auto blocked = [&](int x, int y, int w, int h) {
    const int W = cols + 1;
    return prefix[static_cast<std::size_t>((y + h) * W + x + w)] -
           prefix[static_cast<std::size_t>(y * W + x + w)] -
           prefix[static_cast<std::size_t>((y + h) * W + x)] + prefix[static_cast<std::size_t>(y * W + x)];
  };

  Rect best;
  for (int y = 0; y + 3 <= rows; ++y) {
    for (int x = 0; x + 3 <= cols; ++x) {
      if (blocked(x, y, 3, 3) != 0) continue;
      for (int h = 3; y + h <= rows; ++h) {
        if (blocked(x, y, 3, h) != 0) break;
        for (int w = 3; x + w <= cols; ++w) {
          if (blocked(x, y, w, h) != 0) break;
          const int area = w * h;
          const bool same_corner = best.area() > 0 && best.x == x && best.y == y;
          if (area > best.area() || (area == best.area() && same_corner && w > best.w)) {
            best = {x, y, w, h};
          }
        }
      }
    }
  }
  return best;
}

}  // namespace

std::vector<MicroCluster> cluster_micro(const Room& room, MicroKind kind) {
  const Tile tile = micro_tile(kind);
  const int n = room.size();
  const int cols = room.cols();
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
  std::vector<MicroCluster> clusters;
  std::vector<int> stack;
  std::vector<int> members;
  for (int start = 0; start < n; ++start) {
    if (room.at(start) != tile || seen[static_cast<std::size_t>(start)]) continue;
    members.clear();
    seen[static_cast<std::size_t>(start)] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      members.push_back(cur);
      for_neighbors(cur, cols, n, [&](int nb) {
        if (!seen[static_cast<std::size_t>(nb)] && room.at(nb) == tile) {
          seen[static_cast<std::size_t>(nb)] = 1;
          stack.push_back(nb);
        }
      });
    }
    std::sort(members.begin(), members.end());
    MicroCluster c{kind, {}};
    c.members.reserve(members.size());
    for (int m : members) c.members.push_back(room.coord(m));
    clusters.push_back(std::move(c));
  }
  return clusters;
}

PatternReport detect(const Room& room) {
  PatternReport report;
  for (MicroKind k : kMicroKinds) report.micro[static_cast<std::size_t>(k)] = cluster_micro(room, k);

  const int cols = room.cols();
  const int rows = room.rows();
  const int n = room.size();
  auto& owner = report.owner;
  owner.assign(static_cast<std::size_t>(n), -1);
  auto passable = [&](int idx) { return is_passable(room.at(idx)); };

  // Chambers.
  std::vector<std::uint8_t> available(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) available[static_cast<std::size_t>(i)] = passable(i) ? 1 : 0;
  for (;;) {
    const Rect r = best_rectangle(available, cols, rows);
    if (r.area() == 0) break;
    SpatialPattern p{SpatialKind::Chamber, {}, false};
    const int id = static_cast<int>(report.spatial.size());
    for (int y = r.y; y < r.y + r.h; ++y) {
      for (int x = r.x; x < r.x + r.w; ++x) {
        const int idx = y * cols + x;
        p.cells.push_back(idx);
        available[static_cast<std::size_t>(idx)] = 0;
        owner[static_cast<std::size_t>(idx)] = id;
      }
    }
    report.spatial.push_back(std::move(p));
  }
  const int chamber_count = static_cast<int>(report.spatial.size());

  // Tiles outside chambers are shaped by their neighbours among themselves:
  // leftover neighbours along one axis only make a corridor tile, along both
  // axes a junction, and none at all an isolated tile.
  enum Cls : std::uint8_t { kNone, kHorizontal, kVertical, kJunction, kIsolated };
  auto leftover = [&](int idx) { return passable(idx) && owner[static_cast<std::size_t>(idx)] < 0; };
  std::vector<std::uint8_t> cls(static_cast<std::size_t>(n), kNone);
  for (int i = 0; i < n; ++i) {
    if (!leftover(i)) continue;
    const int x = i % cols;
    const int y = i / cols;
    const bool horiz = (x > 0 && leftover(i - 1)) || (x + 1 < cols && leftover(i + 1));
    const bool vert = (y > 0 && leftover(i - cols)) || (y + 1 < rows && leftover(i + cols));
    cls[static_cast<std::size_t>(i)] = horiz && vert ? kJunction
                                       : horiz      ? kHorizontal
                                       : vert       ? kVertical
                                                    : kIsolated;
  }

  // Corridors: maximal straight runs of same-axis corridor tiles.
  for (int i = 0; i < n; ++i) {
    const auto c = cls[static_cast<std::size_t>(i)];
    if (owner[static_cast<std::size_t>(i)] >= 0 || (c != kHorizontal && c != kVertical)) continue;
    const int id = static_cast<int>(report.spatial.size());
    SpatialPattern p{SpatialKind::Corridor, {}, false};
    const int step = c == kHorizontal ? 1 : cols;
    for (int j = i; j < n && cls[static_cast<std::size_t>(j)] == c && owner[static_cast<std::size_t>(j)] < 0;
         j += step) {
      owner[static_cast<std::size_t>(j)] = id;
      p.cells.push_back(j);
      if (c == kHorizontal && (j + 1) % cols == 0) break;
    }
    report.spatial.push_back(std::move(p));
  }

  // Every other leftover tile is its own pattern: a connector when it touches
  // two or more of the chambers and corridors found above, otherwise nothing.
  std::vector<int> touched;
  for (int i = 0; i < n; ++i) {
    const auto c = cls[static_cast<std::size_t>(i)];
    if (c != kJunction && c != kIsolated) continue;
    touched.clear();
    for_neighbors(i, cols, n, [&](int nb) {
      const auto k = cls[static_cast<std::size_t>(nb)];
      const int o = owner[static_cast<std::size_t>(nb)];
      if (o >= 0 && k != kJunction && k != kIsolated) touched.push_back(o);
    });
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    owner[static_cast<std::size_t>(i)] = static_cast<int>(report.spatial.size());
    report.spatial.push_back(
        SpatialPattern{touched.size() >= 2 ? SpatialKind::Connector : SpatialKind::Nothing, {i}, false});
  }

  // Door flags and adjacency.
  const auto count = report.spatial.size();
  for (const auto& d : room.doors()) {
    report.spatial[static_cast<std::size_t>(owner[static_cast<std::size_t>(room.index(d))])].has_door = true;
  }
  report.adjacency.assign(count, {});
  for (int i = 0; i < n; ++i) {
    const int a = owner[static_cast<std::size_t>(i)];
    if (a < 0) continue;
    const int x = i % cols;
    auto link = [&](int j) {
      const int b = owner[static_cast<std::size_t>(j)];
      if (b < 0 || b == a) return;
      report.adjacency[static_cast<std::size_t>(a)].push_back(b);
      report.adjacency[static_cast<std::size_t>(b)].push_back(a);
    };
    if (x + 1 < cols) link(i + 1);
    if (i + cols < n) link(i + cols);
  }
  for (auto& nbrs : report.adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }

  // Meso-patterns.
  for (int c = 0; c < chamber_count; ++c) {
    const auto& chamber = report.spatial[static_cast<std::size_t>(c)];
    int enemies = 0;
    int treasures = 0;
    bool guarded_entry = false;
    for (int idx : chamber.cells) {
      const Tile t = room.at(idx);
      if (t == Tile::Treasure) ++treasures;
      if (t != Tile::Enemy) continue;
      ++enemies;
      for_neighbors(idx, cols, n, [&](int nb) {
        const int o = owner[static_cast<std::size_t>(nb)];
        if (room.at(nb) == Tile::Door ||
            (o >= 0 && o != c && report.spatial[static_cast<std::size_t>(o)].has_door)) {
          guarded_entry = true;
        }
      });
    }
    if (treasures > 0 && enemies > 0 && guarded_entry) {
      report.meso.push_back({MesoKind::Ambush, c});
    } else if (treasures > 0 && enemies == 0) {
      report.meso.push_back({MesoKind::TreasureRoom, c});
    } else if (enemies > 0 && enemies >= treasures) {
      report.meso.push_back({MesoKind::GuardRoom, c});
    }
  }
  return report;
}

nlohmann::json pattern_report_to_json(const Room& room, const PatternReport& report) {
  using nlohmann::json;
  auto coords = [&](const std::vector<int>& cells) {
    json out = json::array();
    for (int idx : cells) {
      const Coord c = room.coord(idx);
      out.push_back({c.x, c.y});
    }
    return out;
  };
  json micro = json::array();
  for (MicroKind k : kMicroKinds) {
    for (const auto& cl : report.clusters(k)) {
      json members = json::array();
      for (const auto& m : cl.members) members.push_back({m.x, m.y});
      micro.push_back({{"kind", name(k)}, {"members", members}});
    }
  }
  json spatial = json::array();
  for (std::size_t i = 0; i < report.spatial.size(); ++i) {
    const auto& p = report.spatial[i];
    spatial.push_back({{"id", i},
                       {"kind", name(p.kind)},
                       {"door", p.has_door},
                       {"cells", coords(p.cells)},
                       {"neighbors", report.adjacency[i]}});
  }
  json meso = json::array();
  for (const auto& m : report.meso) meso.push_back({{"kind", name(m.kind)}, {"chamber", m.chamber}});
  return {{"micro", micro}, {"spatial", spatial}, {"meso", meso}};
}

}  // namespace roomqd
