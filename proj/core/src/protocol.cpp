#include "roomqd/protocol.hpp"

#include "roomqd/config.hpp"
#include "roomqd/room_io.hpp"

namespace roomqd {

using nlohmann::json;

std::string_view name(ErrorCode c) noexcept {
  switch (c) {
    case ErrorCode::MalformedMessage: return "malformed_message";
    case ErrorCode::UnknownCommand: return "unknown_command";
    case ErrorCode::MalformedRoom: return "malformed_room";
    case ErrorCode::ShapeMismatch: return "shape_mismatch";
    case ErrorCode::InvalidDimensions: return "invalid_dimensions";
    case ErrorCode::InvalidCell: return "invalid_cell";
    case ErrorCode::EmptyCell: return "empty_cell";
    case ErrorCode::UnknownSession: return "unknown_session";
    case ErrorCode::SessionStopped: return "session_stopped";
    case ErrorCode::QueueFull: return "queue_full";
  }
  return "?";
}

std::string_view name(EventType t) noexcept {
  switch (t) {
    case EventType::ElitesUpdated: return "elites_updated";
    case EventType::TargetEcho: return "target_echo";
    case EventType::Error: return "error";
    case EventType::Stats: return "stats";
  }
  return "?";
}

std::string_view command_type(const CommandBody& body) noexcept {
  struct Visitor {
    std::string_view operator()(const SetTarget&) const { return "set_target"; }
    std::string_view operator()(const LockTiles&) const { return "lock_tiles"; }
    std::string_view operator()(const SetDimensions&) const { return "set_dimensions"; }
    std::string_view operator()(const ApplySuggestion&) const { return "apply_suggestion"; }
    std::string_view operator()(const Restart&) const { return "restart"; }
    std::string_view operator()(const Stop&) const { return "stop"; }
  };
  return std::visit(Visitor{}, body);
}

nlohmann::json dimensions_to_json(const std::vector<DimensionDescriptor>& dims) {
  json out = json::array();
  for (const auto& d : dims) out.push_back({{"kind", name(d.kind)}, {"granularity", d.granularity}});
  return out;
}

std::vector<DimensionDescriptor> dimensions_from_json(const json& j) {
  if (!j.is_array()) throw ProtocolError(ErrorCode::InvalidDimensions, "dims must be an array");
  std::vector<DimensionDescriptor> dims;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("kind") || !e["kind"].is_string()) {
      throw ProtocolError(ErrorCode::InvalidDimensions, "each dimension needs a kind name");
    }
    const auto kind = parse_dimension(e["kind"].get<std::string>());
    if (!kind) throw ProtocolError(ErrorCode::InvalidDimensions, "unknown dimension '" + e["kind"].get<std::string>() + "'");
    int g = 5;
    if (e.contains("granularity")) {
      if (!e["granularity"].is_number_integer()) {
        throw ProtocolError(ErrorCode::InvalidDimensions, "granularity must be an integer");
      }
      g = e["granularity"].get<int>();
    }
    dims.push_back({*kind, g});
  }
  try {
    validate_dimensions(dims);
  } catch (const std::invalid_argument& e) {
    throw ProtocolError(ErrorCode::InvalidDimensions, e.what());
  }
  return dims;
}

namespace {

std::vector<Coord> coords_from_json(const json& j) {
  if (!j.is_array()) throw ProtocolError(ErrorCode::MalformedMessage, "coords must be an array");
  std::vector<Coord> out;
  for (const auto& c : j) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() || !c[1].is_number_integer()) {
      throw ProtocolError(ErrorCode::MalformedMessage, "coordinate must be [x, y]");
    }
    out.push_back({c[0].get<int>(), c[1].get<int>()});
  }
  return out;
}

const json& payload_of(const json& msg) {
  static const json empty = json::object();
  if (!msg.contains("payload")) return empty;
  const json& p = msg["payload"];
  if (p.is_null()) return empty;
  if (!p.is_object()) throw ProtocolError(ErrorCode::MalformedMessage, "payload must be an object");
  return p;
}

}  // namespace

Command parse_command(const json& msg, std::string* session) {
  if (!msg.is_object()) throw ProtocolError(ErrorCode::MalformedMessage, "message must be a JSON object");
  if (!msg.contains("type") || !msg["type"].is_string()) {
    throw ProtocolError(ErrorCode::MalformedMessage, "message needs a string 'type'");
  }
  Command cmd;
  if (msg.contains("seq")) {
    // literals built in C++ arrive as signed integers
    const auto& s = msg["seq"];
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<std::int64_t>() >= 0)) {
      throw ProtocolError(ErrorCode::MalformedMessage, "seq must be unsigned");
    }
    cmd.seq = msg["seq"].get<std::uint64_t>();
  }
  if (session && msg.contains("session")) {
    if (!msg["session"].is_string()) throw ProtocolError(ErrorCode::MalformedMessage, "session must be a string");
    *session = msg["session"].get<std::string>();
  }
  const auto type = msg["type"].get<std::string>();
  const json& p = payload_of(msg);
  if (type == "set_target") {
    try {
      cmd.body = SetTarget{room_from_json(p)};
    } catch (const RoomError& e) {
      throw ProtocolError(ErrorCode::MalformedRoom, e.what());
    } catch (const RoomParseError& e) {
      throw ProtocolError(ErrorCode::MalformedRoom, e.what());
    } catch (const json::exception& e) {
      throw ProtocolError(ErrorCode::MalformedRoom, e.what());
    }
  } else if (type == "lock_tiles") {
    cmd.body = LockTiles{coords_from_json(p.value("coords", json::array()))};
  } else if (type == "set_dimensions") {
    if (!p.contains("dims")) throw ProtocolError(ErrorCode::InvalidDimensions, "payload needs 'dims'");
    cmd.body = SetDimensions{dimensions_from_json(p["dims"])};
  } else if (type == "apply_suggestion") {
    const json& cell = p.value("cell", json());
    if (!cell.is_array() || cell.empty()) throw ProtocolError(ErrorCode::InvalidCell, "cell must be a coordinate array");
    ApplySuggestion a;
    for (const auto& c : cell) {
      if (!c.is_number_integer()) throw ProtocolError(ErrorCode::InvalidCell, "cell coordinates must be integers");
      a.cell.push_back(c.get<int>());
    }
    cmd.body = std::move(a);
  } else if (type == "restart") {
    cmd.body = Restart{};
  } else if (type == "stop") {
    cmd.body = Stop{};
  } else {
    throw ProtocolError(ErrorCode::UnknownCommand, "unknown command type '" + type + "'");
  }
  return cmd;
}

json command_to_json(const Command& cmd, std::string_view session) {
  json payload = json::object();
  struct Visitor {
    json& p;
    void operator()(const SetTarget& c) const { p = room_to_json(c.room); }
    void operator()(const LockTiles& c) const {
      p["coords"] = json::array();
      for (const auto& xy : c.coords) p["coords"].push_back({xy.x, xy.y});
    }
    void operator()(const SetDimensions& c) const { p["dims"] = dimensions_to_json(c.dims); }
    void operator()(const ApplySuggestion& c) const { p["cell"] = c.cell; }
    void operator()(const Restart&) const {}
    void operator()(const Stop&) const {}
  };
  std::visit(Visitor{payload}, cmd.body);
  return {{"session", session}, {"seq", cmd.seq}, {"type", command_type(cmd.body)}, {"payload", payload}};
}

json event_envelope(const Event& e, std::string_view session, std::uint64_t seq) {
  return {{"session", session}, {"seq", seq}, {"type", name(e.type)}, {"payload", e.payload}};
}

json scores_to_json(const DimensionScores& scores) {
  json out = json::object();
  for (Dimension d : kAllDimensions) out[std::string(name(d))] = scores[static_cast<std::size_t>(d)];
  return out;
}

json broadcast_to_json(const EliteBroadcast& b) {
  json cells = json::array();
  for (const auto& c : b.cells) {
    json cell = {{"coords", c.coords}, {"feasible_count", c.feasible_count}, {"infeasible_count", c.infeasible_count}};
    if (c.elite) {
      cell["elite"] = {{"room", room_to_json(c.elite->room)},
                       {"fitness", c.elite->fitness()},
                       {"inventorial", c.elite->eval.fitness.inventorial},
                       {"spatial", c.elite->eval.fitness.spatial},
                       {"scores", scores_to_json(c.elite->eval.scores)}};
    } else {
      cell["elite"] = nullptr;
    }
    cells.push_back(std::move(cell));
  }
  return {{"generation", b.generation},
          {"dims", dimensions_to_json(b.dims)},
          {"cell_count", b.cell_count},
          {"occupied_feasible_cells", b.occupied_feasible_cells()},
          {"feasible_total", b.feasible_total},
          {"infeasible_total", b.infeasible_total},
          {"cells", std::move(cells)}};
}

Event elites_event(const EliteBroadcast& b) { return {EventType::ElitesUpdated, broadcast_to_json(b)}; }

Event target_event(const Room& room, std::string_view reason) {
  return {EventType::TargetEcho, {{"room", room_to_json(room)}, {"reason", reason}}};
}

Event error_event(ErrorCode code, std::string_view message, std::uint64_t command_seq) {
  return {EventType::Error, {{"code", name(code)}, {"message", message}, {"command_seq", command_seq}}};
}

}  // namespace roomqd
