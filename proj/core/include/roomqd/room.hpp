#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace roomqd {

enum class Tile : std::uint8_t { Floor, Wall, Treasure, Enemy, Door };

inline constexpr int kMinSide = 3;
inline constexpr int kMaxSide = 20;

constexpr bool is_passable(Tile t) noexcept { return t != Tile::Wall; }

char tile_char(Tile t) noexcept;
std::optional<Tile> tile_from_char(char c) noexcept;

struct Coord {
  int x = 0;
  int y = 0;
  auto operator<=>(const Coord&) const = default;
};

class RoomError : public std::runtime_error {
 public:
  enum class Code {
    BadSize,
    TileCountMismatch,
    NoDoors,
    DoorOffBorder,
    DoorTileMismatch,
    StrayDoorTile,
    DuplicateDoor,
    LockOutOfBounds,
    DoorEdit,
    ShapeMismatch,
  };
  RoomError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

/// Rectangular tile grid. Doors are fixed border tiles; locked tiles are
/// copied verbatim from the target into every generated room.
///
/// The grid geometry (size, doors, lock mask) lives in a shared immutable
/// frame, so copying a Room copies only the tile vector.
class Room {
 public:
  /// Validates every invariant; throws RoomError on violation.
  /// Doors and locked coordinates are canonicalized to row-major order.
  Room(int cols, int rows, std::vector<Tile> tiles, std::vector<Coord> doors,
       std::vector<Coord> locked = {});

  /// All-`fill` room with Door tiles stamped at `doors`.
  static Room filled(int cols, int rows, Tile fill, std::vector<Coord> doors);

  int cols() const noexcept { return frame_->cols; }
  int rows() const noexcept { return frame_->rows; }
  int size() const noexcept { return frame_->cols * frame_->rows; }

  bool in_bounds(Coord c) const noexcept {
    return c.x >= 0 && c.y >= 0 && c.x < cols() && c.y < rows();
  }
  int index(Coord c) const noexcept { return c.y * cols() + c.x; }
  Coord coord(int idx) const noexcept { return {idx % cols(), idx / cols()}; }

  Tile at(Coord c) const noexcept { return tiles_[static_cast<std::size_t>(index(c))]; }
  Tile at(int idx) const noexcept { return tiles_[static_cast<std::size_t>(idx)]; }
  std::span<const Tile> tiles() const noexcept { return tiles_; }

  const std::vector<Coord>& doors() const noexcept { return frame_->doors; }
  const std::vector<Coord>& locked() const noexcept { return frame_->locked; }
  bool is_locked(int idx) const noexcept { return frame_->lock_mask[static_cast<std::size_t>(idx)] != 0; }
  bool is_door(int idx) const noexcept { return tiles_[static_cast<std::size_t>(idx)] == Tile::Door; }

  /// Tiles a generator may rewrite: neither doors nor locked.
  const std::vector<int>& editable() const noexcept { return frame_->editable; }

  int count(Tile t) const noexcept;
  int passable_count() const noexcept;

  /// Same geometry (size and doors); the lock mask may differ.
  bool same_shape(const Room& other) const noexcept;

  /// Copy with one tile replaced. Door tiles cannot be written or overwritten.
  Room with_tile(Coord c, Tile t) const;
  /// Copy with the full tile array replaced (same frame). Validates doors.
  Room with_tiles(std::vector<Tile> tiles) const;
  /// Copy with a new lock set.
  Room with_locked(std::vector<Coord> locked) const;

  /// 64-bit FNV-1a over size and tile array; the identity used for
  /// "unique individual" bookkeeping.
  std::uint64_t layout_hash() const noexcept;

  friend bool operator==(const Room& a, const Room& b) noexcept;

  // Unchecked tile write for generators; caller preserves door/lock invariants.
  void set_unchecked(int idx, Tile t) noexcept { tiles_[static_cast<std::size_t>(idx)] = t; }

 private:
  struct Frame {
    int cols = 0;
    int rows = 0;
    std::vector<Coord> doors;
    std::vector<Coord> locked;
    std::vector<std::uint8_t> lock_mask;
    std::vector<int> editable;
  };
  Room(std::shared_ptr<const Frame> frame, std::vector<Tile> tiles) noexcept
      : frame_(std::move(frame)), tiles_(std::move(tiles)) {}
  static std::shared_ptr<const Frame> make_frame(int cols, int rows, std::vector<Coord> doors,
                                                 std::vector<Coord> locked);
  void validate_tiles() const;

  std::shared_ptr<const Frame> frame_;
  std::vector<Tile> tiles_;
};

/// True iff every Door, Enemy and Treasure tile lies in one 4-connected
/// component of passable tiles. Enemies do not block movement.
bool is_feasible(const Room& room);

/// Component label per tile over 4-connected passable tiles; walls are -1.
std::vector<int> passable_components(const Room& room);

struct DungeonEdge {
  int room_a = 0;
  int door_a = 0;
  int room_b = 0;
  int door_b = 0;
};

/// Minimal dungeon graph: rooms joined door to door.
class DungeonStub {
 public:
  DungeonStub(std::vector<Room> rooms, std::vector<DungeonEdge> edges, int initial_room);

  const std::vector<Room>& rooms() const noexcept { return rooms_; }
  const std::vector<DungeonEdge>& edges() const noexcept { return edges_; }
  int initial_room() const noexcept { return initial_; }

 private:
  std::vector<Room> rooms_;
  std::vector<DungeonEdge> edges_;
  int initial_;
};

/// Rooms with no door-to-door path from the initial room. Empty set means
/// the dungeon is traversable.
std::set<int> dungeon_reachability(const DungeonStub& dungeon);

}  // namespace roomqd
