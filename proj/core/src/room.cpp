#include "roomqd/room.hpp"

#include <algorithm>
#include <queue>

namespace roomqd {

char tile_char(Tile t) noexcept {
  switch (t) {
    case Tile::Floor: return 'f';
    case Tile::Wall: return 'w';
    case Tile::Treasure: return 't';
    case Tile::Enemy: return 'e';
    case Tile::Door: return 'd';
  }
  return '?';
}

std::optional<Tile> tile_from_char(char c) noexcept {
  switch (c) {
    case 'f': return Tile::Floor;
    case 'w': return Tile::Wall;
    case 't': return Tile::Treasure;
    case 'e': return Tile::Enemy;
    case 'd': return Tile::Door;
    default: return std::nullopt;
  }
}

namespace {

bool on_border(Coord c, int cols, int rows) {
  return c.x == 0 || c.y == 0 || c.x == cols - 1 || c.y == rows - 1;
}

bool row_major_less(Coord a, Coord b) { return a.y != b.y ? a.y < b.y : a.x < b.x; }

}  // namespace

std::shared_ptr<const Room::Frame> Room::make_frame(int cols, int rows, std::vector<Coord> doors,
                                                    std::vector<Coord> locked) {
  if (cols < kMinSide || cols > kMaxSide || rows < kMinSide || rows > kMaxSide) {
    throw RoomError(RoomError::Code::BadSize,
                    "room size " + std::to_string(cols) + "x" + std::to_string(rows) +
                        " outside 3..20");
  }
  if (doors.empty()) throw RoomError(RoomError::Code::NoDoors, "room has no doors");
  std::sort(doors.begin(), doors.end(), row_major_less);
  if (std::adjacent_find(doors.begin(), doors.end()) != doors.end()) {
    throw RoomError(RoomError::Code::DuplicateDoor, "duplicate door coordinate");
  }
  for (const auto& d : doors) {
    if (d.x < 0 || d.y < 0 || d.x >= cols || d.y >= rows || !on_border(d, cols, rows)) {
      throw RoomError(RoomError::Code::DoorOffBorder,
                      "door (" + std::to_string(d.x) + "," + std::to_string(d.y) + ") off border");
    }
  }
  std::sort(locked.begin(), locked.end(), row_major_less);
  locked.erase(std::unique(locked.begin(), locked.end()), locked.end());
  auto frame = std::make_shared<Frame>();
  frame->cols = cols;
  frame->rows = rows;
  frame->lock_mask.assign(static_cast<std::size_t>(cols * rows), 0);
  for (const auto& l : locked) {
    if (l.x < 0 || l.y < 0 || l.x >= cols || l.y >= rows) {
      throw RoomError(RoomError::Code::LockOutOfBounds,
                      "locked tile (" + std::to_string(l.x) + "," + std::to_string(l.y) +
                          ") out of bounds");
    }
    frame->lock_mask[static_cast<std::size_t>(l.y * cols + l.x)] = 1;
  }
  std::vector<std::uint8_t> door_mask(static_cast<std::size_t>(cols * rows), 0);
  for (const auto& d : doors) door_mask[static_cast<std::size_t>(d.y * cols + d.x)] = 1;
  for (int i = 0; i < cols * rows; ++i) {
    if (!door_mask[static_cast<std::size_t>(i)] && !frame->lock_mask[static_cast<std::size_t>(i)]) {
      frame->editable.push_back(i);
    }
  }
  frame->doors = std::move(doors);
  frame->locked = std::move(locked);
  return frame;
}

void Room::validate_tiles() const {
  if (static_cast<int>(tiles_.size()) != size()) {
    throw RoomError(RoomError::Code::TileCountMismatch,
                    "expected " + std::to_string(size()) + " tiles, got " +
                        std::to_string(tiles_.size()));
  }
  std::vector<std::uint8_t> door_mask(tiles_.size(), 0);
  for (const auto& d : doors()) {
    const int idx = index(d);
    door_mask[static_cast<std::size_t>(idx)] = 1;
    if (tiles_[static_cast<std::size_t>(idx)] != Tile::Door) {
      throw RoomError(RoomError::Code::DoorTileMismatch,
                      "door coordinate (" + std::to_string(d.x) + "," + std::to_string(d.y) +
                          ") does not hold a door tile");
    }
  }
  for (std::size_t i = 0; i < tiles_.size(); ++i) {
    if (tiles_[i] == Tile::Door && !door_mask[i]) {
      const Coord c = coord(static_cast<int>(i));
      throw RoomError(RoomError::Code::StrayDoorTile,
                      "door tile at (" + std::to_string(c.x) + "," + std::to_string(c.y) +
                          ") is not a declared door");
    }
  }
}

Room::Room(int cols, int rows, std::vector<Tile> tiles, std::vector<Coord> doors,
           std::vector<Coord> locked)
    : frame_(make_frame(cols, rows, std::move(doors), std::move(locked))), tiles_(std::move(tiles)) {
  validate_tiles();
}

Room Room::filled(int cols, int rows, Tile fill, std::vector<Coord> doors) {
  auto frame = make_frame(cols, rows, std::move(doors), {});
  std::vector<Tile> tiles(static_cast<std::size_t>(cols * rows), fill);
  for (const auto& d : frame->doors) tiles[static_cast<std::size_t>(d.y * cols + d.x)] = Tile::Door;
  Room r(std::move(frame), std::move(tiles));
  r.validate_tiles();
  return r;
}

int Room::count(Tile t) const noexcept {
  return static_cast<int>(std::count(tiles_.begin(), tiles_.end(), t));
}

int Room::passable_count() const noexcept { return size() - count(Tile::Wall); }

bool Room::same_shape(const Room& other) const noexcept {
  return cols() == other.cols() && rows() == other.rows() && doors() == other.doors();
}

Room Room::with_tile(Coord c, Tile t) const {
  if (!in_bounds(c)) {
    throw RoomError(RoomError::Code::LockOutOfBounds, "tile coordinate out of bounds");
  }
  if (t == Tile::Door || at(c) == Tile::Door) {
    throw RoomError(RoomError::Code::DoorEdit, "door tiles cannot be edited");
  }
  Room r = *this;
  r.tiles_[static_cast<std::size_t>(index(c))] = t;
  return r;
}

Room Room::with_tiles(std::vector<Tile> tiles) const {
  Room r(frame_, std::move(tiles));
  r.validate_tiles();
  return r;
}

Room Room::with_locked(std::vector<Coord> locked) const {
  Room r(make_frame(cols(), rows(), doors(), std::move(locked)), tiles_);
  return r;
}

std::uint64_t Room::layout_hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint8_t b) {
    h ^= b;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint8_t>(cols()));
  mix(static_cast<std::uint8_t>(rows()));
  for (Tile t : tiles_) mix(static_cast<std::uint8_t>(t));
  return h;
}

bool operator==(const Room& a, const Room& b) noexcept {
  if (a.frame_ != b.frame_) {
    if (a.cols() != b.cols() || a.rows() != b.rows() || a.doors() != b.doors() ||
        a.locked() != b.locked()) {
      return false;
    }
  }
  return a.tiles_ == b.tiles_;
}

std::vector<int> passable_components(const Room& room) {
  const int n = room.size();
  const int cols = room.cols();
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  std::vector<int> stack;
  int next = 0;
  for (int start = 0; start < n; ++start) {
    if (!is_passable(room.at(start)) || label[static_cast<std::size_t>(start)] >= 0) continue;
    label[static_cast<std::size_t>(start)] = next;
    stack.push_back(start);
    while (!stack.empty()) {
      const int cur = stack.back();
      stack.pop_back();
      const int x = cur % cols;
      const int neighbors[4] = {x > 0 ? cur - 1 : -1, x + 1 < cols ? cur + 1 : -1, cur - cols,
                                cur + cols};
      for (int nb : neighbors) {
        if (nb < 0 || nb >= n) continue;
        if (label[static_cast<std::size_t>(nb)] >= 0 || !is_passable(room.at(nb))) continue;
        label[static_cast<std::size_t>(nb)] = next;
        stack.push_back(nb);
      }
    }
    ++next;
  }
  return label;
}

bool is_feasible(const Room& room) {
  const auto label = passable_components(room);
  const int reference = label[static_cast<std::size_t>(room.index(room.doors().front()))];
  for (int i = 0; i < room.size(); ++i) {
    const Tile t = room.at(i);
    if ((t == Tile::Door || t == Tile::Enemy || t == Tile::Treasure) &&
        label[static_cast<std::size_t>(i)] != reference) {
      return false;
    }
  }
  return true;
}

DungeonStub::DungeonStub(std::vector<Room> rooms, std::vector<DungeonEdge> edges, int initial_room)
    : rooms_(std::move(rooms)), edges_(std::move(edges)), initial_(initial_room) {
  if (rooms_.size() < 2) throw std::invalid_argument("a dungeon needs at least two rooms");
  if (edges_.empty()) throw std::invalid_argument("a dungeon needs at least one connection");
  const int count = static_cast<int>(rooms_.size());
  if (initial_ < 0 || initial_ >= count) throw std::invalid_argument("initial room out of range");
  auto check = [&](int room, int door) {
    if (room < 0 || room >= count) throw std::invalid_argument("edge references a missing room");
    const int doors = static_cast<int>(rooms_[static_cast<std::size_t>(room)].doors().size());
    if (door < 0 || door >= doors) throw std::invalid_argument("edge references a missing door");
  };
  for (const auto& e : edges_) {
    check(e.room_a, e.door_a);
    check(e.room_b, e.door_b);
  }
}

std::set<int> dungeon_reachability(const DungeonStub& dungeon) {
  const auto& rooms = dungeon.rooms();
  // One node per (room, door); offsets[r] is the first node of room r.
  std::vector<int> offsets(rooms.size() + 1, 0);
  for (std::size_t r = 0; r < rooms.size(); ++r) {
    offsets[r + 1] = offsets[r] + static_cast<int>(rooms[r].doors().size());
  }
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(offsets.back()));
  for (std::size_t r = 0; r < rooms.size(); ++r) {
    const auto label = passable_components(rooms[r]);
    const auto& doors = rooms[r].doors();
    for (std::size_t i = 0; i < doors.size(); ++i) {
      for (std::size_t j = i + 1; j < doors.size(); ++j) {
        if (label[static_cast<std::size_t>(rooms[r].index(doors[i]))] ==
            label[static_cast<std::size_t>(rooms[r].index(doors[j]))]) {
          const int a = offsets[r] + static_cast<int>(i);
          const int b = offsets[r] + static_cast<int>(j);
          adj[static_cast<std::size_t>(a)].push_back(b);
          adj[static_cast<std::size_t>(b)].push_back(a);
        }
      }
    }
  }
  for (const auto& e : dungeon.edges()) {
    const int a = offsets[static_cast<std::size_t>(e.room_a)] + e.door_a;
    const int b = offsets[static_cast<std::size_t>(e.room_b)] + e.door_b;
    adj[static_cast<std::size_t>(a)].push_back(b);
    adj[static_cast<std::size_t>(b)].push_back(a);
  }

  std::vector<std::uint8_t> seen(adj.size(), 0);
  std::queue<int> frontier;
  const auto init = static_cast<std::size_t>(dungeon.initial_room());
  for (int node = offsets[init]; node < offsets[init + 1]; ++node) {
    seen[static_cast<std::size_t>(node)] = 1;
    frontier.push(node);
  }
  while (!frontier.empty()) {
    const int cur = frontier.front();
    frontier.pop();
    for (int nb : adj[static_cast<std::size_t>(cur)]) {
      if (!seen[static_cast<std::size_t>(nb)]) {
        seen[static_cast<std::size_t>(nb)] = 1;
        frontier.push(nb);
      }
    }
  }

  std::set<int> unreachable;
  for (std::size_t r = 0; r < rooms.size(); ++r) {
    if (r == init) continue;
    bool any = false;
    for (int node = offsets[r]; node < offsets[r + 1]; ++node) any = any || seen[static_cast<std::size_t>(node)];
    if (!any) unreachable.insert(static_cast<int>(r));
  }
  return unreachable;
}

}  // namespace roomqd
