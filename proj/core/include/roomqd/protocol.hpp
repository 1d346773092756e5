#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "roomqd/engine.hpp"
#include "roomqd/room.hpp"

namespace roomqd {

// Wire messages are JSON objects {session, seq, type, payload}.
//
// Commands (client -> service):
//   set_target       payload: room
//   lock_tiles       payload: {coords: [[x,y]...]}   replaces the lock set
//   set_dimensions   payload: {dims: [{kind, granularity}...]}
//   apply_suggestion payload: {cell: [i, j, ...]}
//   restart          payload: {}
//   stop             payload: {}
//
// Events (service -> client):
//   elites_updated   payload: broadcast
//   target_echo      payload: {room, reason}
//   error            payload: {code, message, command_seq}
//   stats            payload: {generation, occupied_cells, feasible, infeasible, generations_per_second}

enum class ErrorCode {
  MalformedMessage,
  UnknownCommand,
  MalformedRoom,
  ShapeMismatch,
  InvalidDimensions,
  InvalidCell,
  EmptyCell,
  UnknownSession,
  SessionStopped,
  QueueFull,
};

std::string_view name(ErrorCode c) noexcept;

class ProtocolError : public std::runtime_error {
 public:
  ProtocolError(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct SetTarget {
  Room room;
};
struct LockTiles {
  std::vector<Coord> coords;
};
struct SetDimensions {
  std::vector<DimensionDescriptor> dims;
};
struct ApplySuggestion {
  std::vector<int> cell;
};
struct Restart {};
struct Stop {};

using CommandBody = std::variant<Restart, SetTarget, LockTiles, SetDimensions, ApplySuggestion, Stop>;

struct Command {
  std::uint64_t seq = 0;  // client-chosen, echoed in errors
  CommandBody body;
};

std::string_view command_type(const CommandBody& body) noexcept;

/// Parses and validates a command envelope. Rooms must satisfy the room
/// invariants and dimension lists the engine's rules. Throws ProtocolError.
/// `session` is filled from the envelope when present.
Command parse_command(const nlohmann::json& message, std::string* session = nullptr);
nlohmann::json command_to_json(const Command& cmd, std::string_view session);

enum class EventType { ElitesUpdated, TargetEcho, Error, Stats };

std::string_view name(EventType t) noexcept;

struct Event {
  EventType type = EventType::Stats;
  nlohmann::json payload;
};

nlohmann::json event_envelope(const Event& e, std::string_view session, std::uint64_t seq);

nlohmann::json dimensions_to_json(const std::vector<DimensionDescriptor>& dims);
std::vector<DimensionDescriptor> dimensions_from_json(const nlohmann::json& j);  // throws ProtocolError

nlohmann::json scores_to_json(const DimensionScores& scores);
nlohmann::json broadcast_to_json(const EliteBroadcast& b);

Event elites_event(const EliteBroadcast& b);
Event target_event(const Room& room, std::string_view reason);
Event error_event(ErrorCode code, std::string_view message, std::uint64_t command_seq = 0);

}  // namespace roomqd
