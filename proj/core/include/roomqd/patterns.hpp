#pragma once

#include <array>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "roomqd/room.hpp"

namespace roomqd {

enum class MicroKind : std::uint8_t { Enemy, Treasure, Wall };
inline constexpr std::array<MicroKind, 3> kMicroKinds = {MicroKind::Enemy, MicroKind::Treasure,
                                                         MicroKind::Wall};

constexpr Tile micro_tile(MicroKind k) noexcept {
  switch (k) {
    case MicroKind::Enemy: return Tile::Enemy;
    case MicroKind::Treasure: return Tile::Treasure;
    case MicroKind::Wall: return Tile::Wall;
  }
  return Tile::Wall;
}

/// Maximal 4-connected group of same-kind tiles. Members are in row-major order.
struct MicroCluster {
  MicroKind kind = MicroKind::Enemy;
  std::vector<Coord> members;
};

enum class SpatialKind : std::uint8_t { Chamber, Corridor, Connector, Nothing };

struct SpatialPattern {
  SpatialKind kind = SpatialKind::Nothing;
  std::vector<int> cells;  // tile indices, ascending
  bool has_door = false;
};

enum class MesoKind : std::uint8_t { TreasureRoom, GuardRoom, Ambush };

struct MesoPattern {
  MesoKind kind = MesoKind::TreasureRoom;
  int chamber = 0;  // index into PatternReport::spatial
};

struct PatternReport {
  std::array<std::vector<MicroCluster>, 3> micro;  // indexed by MicroKind
  std::vector<SpatialPattern> spatial;
  std::vector<MesoPattern> meso;
  std::vector<std::vector<int>> adjacency;  // per spatial pattern, ascending neighbor ids
  std::vector<int> owner;                   // per tile: spatial pattern id, -1 for walls

  const std::vector<MicroCluster>& clusters(MicroKind k) const noexcept {
    return micro[static_cast<std::size_t>(k)];
  }
  int count(SpatialKind k) const noexcept;
  int cells_of(SpatialKind k) const noexcept;
  /// Ids of spatial patterns that contain at least one door, ascending.
  std::vector<int> door_patterns() const;
};

std::string_view name(SpatialKind k) noexcept;
std::string_view name(MesoKind k) noexcept;
std::string_view name(MicroKind k) noexcept;

/// Maximal disjoint 4-connected clusters of one micro-pattern kind.
std::vector<MicroCluster> cluster_micro(const Room& room, MicroKind kind);

/// Full pattern analysis of a room. Deterministic; every passable tile
/// belongs to exactly one spatial pattern.
///
/// Spatial segmentation:
///  - chambers are greedily extracted filled rectangles of passable tiles, at
///    least 3x3, largest area first (ties: earliest top-left in scan order,
///    then wider);
///  - tiles left over are judged by their leftover neighbours only: one with
///    such neighbours along a single axis is a corridor tile, and straight
///    runs of corridor tiles form one corridor;
///  - every other leftover tile (neighbours on both axes, or none) is a
///    pattern of its own: a connector when it touches two or more distinct
///    chambers/corridors, otherwise "nothing".
///
/// Meso-patterns, one at most per chamber, by priority:
///  - ambush: chamber holds a treasure and an enemy that borders a door tile
///    or a different door-bearing pattern;
///  - treasure room: treasures and no enemies;
///  - guard room: enemies, and at least as many enemies as treasures.
PatternReport detect(const Room& room);

nlohmann::json pattern_report_to_json(const Room& room, const PatternReport& report);

}  // namespace roomqd
