#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "roomqd/room.hpp"

namespace roomqd {

class RoomParseError : public std::runtime_error {
 public:
  enum class Code { BadHeader, DimensionMismatch, IllegalTile, DoorOffBorder, BadLockLine, InvalidRoom };
  RoomParseError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

// Text room format:
//
//   13 7            <- "cols rows"
//   fffffffffffff   <- one line per row, one of f w t e d per tile
//   ...
//   lock 3 4        <- optional, one locked coordinate per line
//
// Doors are the 'd' tiles; each must sit on the border.
std::string encode_room(const Room& room);
Room decode_room(std::string_view text);

Room load_room(const std::filesystem::path& path);
void save_room(const Room& room, const std::filesystem::path& path);

// JSON form: {cols, rows, tiles: [row strings], doors: [[x,y]...], locked: [[x,y]...]}
nlohmann::json room_to_json(const Room& room);
Room room_from_json(const nlohmann::json& j);

}  // namespace roomqd
