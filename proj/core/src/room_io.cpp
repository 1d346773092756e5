#include "roomqd/room_io.hpp"

#include <fstream>
#include <sstream>

namespace roomqd {

namespace {

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

using Code = RoomParseError::Code;

// Shared by the text and JSON decoders.
Room build_room(int cols, int rows, const std::vector<std::string>& grid,
                std::vector<Coord> locked, const std::vector<Coord>* declared_doors) {
  if (static_cast<int>(grid.size()) != rows) {
    throw RoomParseError(Code::DimensionMismatch, "expected " + std::to_string(rows) +
                                                      " rows, got " + std::to_string(grid.size()));
  }
  std::vector<Tile> tiles;
  tiles.reserve(static_cast<std::size_t>(cols * rows));
  std::vector<Coord> doors;
  for (int y = 0; y < rows; ++y) {
    const auto& line = grid[static_cast<std::size_t>(y)];
    if (static_cast<int>(line.size()) != cols) {
      throw RoomParseError(Code::DimensionMismatch,
                           "row " + std::to_string(y) + " has " + std::to_string(line.size()) +
                               " tiles, expected " + std::to_string(cols));
    }
    for (int x = 0; x < cols; ++x) {
      const auto t = tile_from_char(line[static_cast<std::size_t>(x)]);
      if (!t) {
        throw RoomParseError(Code::IllegalTile, std::string("illegal tile '") +
                                                    line[static_cast<std::size_t>(x)] + "' at (" +
                                                    std::to_string(x) + "," + std::to_string(y) + ")");
      }
      if (*t == Tile::Door) {
        if (x != 0 && y != 0 && x != cols - 1 && y != rows - 1) {
          throw RoomParseError(Code::DoorOffBorder, "door off border at (" + std::to_string(x) +
                                                        "," + std::to_string(y) + ")");
        }
        doors.push_back({x, y});
      }
      tiles.push_back(*t);
    }
  }
  if (declared_doors) {
    for (const auto& d : *declared_doors) {
      if (d.x != 0 && d.y != 0 && d.x != cols - 1 && d.y != rows - 1) {
        throw RoomParseError(Code::DoorOffBorder, "door off border at (" + std::to_string(d.x) +
                                                      "," + std::to_string(d.y) + ")");
      }
    }
    doors = *declared_doors;
  }
  try {
    return Room(cols, rows, std::move(tiles), std::move(doors), std::move(locked));
  } catch (const RoomError& e) {
    if (e.code() == RoomError::Code::DoorOffBorder) throw RoomParseError(Code::DoorOffBorder, e.what());
    if (e.code() == RoomError::Code::LockOutOfBounds) throw RoomParseError(Code::BadLockLine, e.what());
    throw RoomParseError(Code::InvalidRoom, e.what());
  }
}

}  // namespace

std::string encode_room(const Room& room) {
  std::string out = std::to_string(room.cols()) + " " + std::to_string(room.rows()) + "\n";
  for (int y = 0; y < room.rows(); ++y) {
    for (int x = 0; x < room.cols(); ++x) out.push_back(tile_char(room.at(Coord{x, y})));
    out.push_back('\n');
  }
  for (const auto& l : room.locked()) {
    out += "lock " + std::to_string(l.x) + " " + std::to_string(l.y) + "\n";
  }
  return out;
}

Room decode_room(std::string_view text) {
  auto lines = split_lines(text);
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw RoomParseError(Code::BadHeader, "empty room text");

  int cols = 0;
  int rows = 0;
  {
    std::istringstream header(lines.front());
    std::string extra;
    if (!(header >> cols >> rows) || (header >> extra)) {
      throw RoomParseError(Code::BadHeader, "header must be 'cols rows'");
    }
    if (cols < kMinSide || cols > kMaxSide || rows < kMinSide || rows > kMaxSide) {
      throw RoomParseError(Code::BadHeader, "room size outside 3..20");
    }
  }

  std::vector<std::string> grid;
  std::vector<Coord> locked;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::string line = trim(lines[i]);
    if (line.rfind("lock", 0) == 0) {
      std::istringstream ls(line.substr(4));
      Coord c;
      std::string extra;
      if (!(ls >> c.x >> c.y) || (ls >> extra)) {
        throw RoomParseError(Code::BadLockLine, "malformed lock line: " + line);
      }
      locked.push_back(c);
    } else {
      if (!locked.empty()) {
        throw RoomParseError(Code::DimensionMismatch, "grid row after lock lines");
      }
      grid.push_back(line);
    }
  }
  return build_room(cols, rows, grid, std::move(locked), nullptr);
}

Room load_room(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open room file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return decode_room(ss.str());
}

void save_room(const Room& room, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write room file " + path.string());
  out << encode_room(room);
}

nlohmann::json room_to_json(const Room& room) {
  nlohmann::json rows = nlohmann::json::array();
  for (int y = 0; y < room.rows(); ++y) {
    std::string line;
    for (int x = 0; x < room.cols(); ++x) line.push_back(tile_char(room.at(Coord{x, y})));
    rows.push_back(line);
  }
  nlohmann::json doors = nlohmann::json::array();
  for (const auto& d : room.doors()) doors.push_back({d.x, d.y});
  nlohmann::json locked = nlohmann::json::array();
  for (const auto& l : room.locked()) locked.push_back({l.x, l.y});
  return {{"cols", room.cols()}, {"rows", room.rows()}, {"tiles", rows},
          {"doors", doors},      {"locked", locked}};
}

Room room_from_json(const nlohmann::json& j) {
  try {
    const int cols = j.at("cols").get<int>();
    const int rows = j.at("rows").get<int>();
    if (cols < kMinSide || cols > kMaxSide || rows < kMinSide || rows > kMaxSide) {
      throw RoomParseError(Code::BadHeader, "room size outside 3..20");
    }
    std::vector<std::string> grid = j.at("tiles").get<std::vector<std::string>>();
    auto read_coords = [&](const char* key) {
      std::vector<Coord> out;
      if (!j.contains(key)) return out;
      for (const auto& c : j.at(key)) {
        if (!c.is_array() || c.size() != 2) {
          throw RoomParseError(Code::BadLockLine, std::string("malformed coordinate in ") + key);
        }
        out.push_back({c[0].get<int>(), c[1].get<int>()});
      }
      return out;
    };
    std::vector<Coord> doors = read_coords("doors");
    std::vector<Coord> locked = read_coords("locked");
    return build_room(cols, rows, grid, std::move(locked), j.contains("doors") ? &doors : nullptr);
  } catch (const nlohmann::json::exception& e) {
    throw RoomParseError(Code::BadHeader, std::string("malformed room JSON: ") + e.what());
  }
}

}  // namespace roomqd
