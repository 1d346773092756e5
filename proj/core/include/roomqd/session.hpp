#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "roomqd/engine.hpp"
#include "roomqd/protocol.hpp"

namespace roomqd {

/// A command together with the generation count at which it took effect
/// (it ran before generation `generation + 1`).
struct AppliedCommand {
  long generation = 0;
  Command command;
};
using CommandLog = std::vector<AppliedCommand>;

nlohmann::json command_log_to_json(const CommandLog& log);
CommandLog command_log_from_json(const nlohmann::json& j);  // throws ProtocolError

/// Single-threaded session state machine: applies commands between
/// generations and turns engine output into protocol events. Fully
/// deterministic for a given config, target and command schedule.
class SessionCore {
 public:
  SessionCore(EngineConfig config, Room target);

  /// Applies one command at the current generation boundary. Failures come
  /// back as error events; the engine is left untouched by a failed command.
  std::vector<Event> apply(const Command& cmd);
  /// Runs one generation; returns the elites event when it broadcast.
  std::optional<Event> step();

  bool stopped() const noexcept { return stopped_; }
  const Engine& engine() const noexcept { return engine_; }
  const CommandLog& log() const noexcept { return log_; }

 private:
  Engine engine_;
  CommandLog log_;
  bool stopped_ = false;
};

/// Re-runs a recorded session for `generations` generations and returns every
/// event it produces, in order.
std::vector<Event> replay(const EngineConfig& config, const Room& target, const CommandLog& log, long generations);

struct SessionOptions {
  std::size_t command_capacity = 64;
  std::size_t event_capacity = 2048;
  /// Evolution pauses after this many generations (0 = run until stopped).
  long max_generations = 0;
};

struct EventBatch {
  std::vector<nlohmann::json> events;  // envelopes, ascending seq
  std::uint64_t next = 0;              // pass as `after` in the next poll
  std::uint64_t oldest = 0;            // oldest seq still buffered (0 when none)
  bool stopped = false;
};

/// A live session: one engine thread evolving continuously, a bounded
/// command queue in front of it and a bounded event log behind it.
///
/// Commands are applied strictly between generations in arrival order.
/// Events get consecutive sequence numbers from 1; any number of
/// subscribers may poll the log. When the log is full the oldest events are
/// dropped, and a new stats event replaces any older one still buffered.
class Session {
 public:
  Session(std::string id, EngineConfig config, Room target, SessionOptions options = {});
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const std::string& id() const noexcept { return id_; }

  /// Enqueues a command, waiting up to `wait` for queue space. Commands that
  /// can be rejected up front (wrong room shape, stopped session, full queue)
  /// throw ProtocolError and are also published as error events.
  void send(Command cmd, std::chrono::milliseconds wait = std::chrono::milliseconds(2000));

  /// Publishes an error event for a message that never became a command.
  void report_error(ErrorCode code, const std::string& message, std::uint64_t command_seq = 0);

  /// Events with seq > `after`, waiting up to `timeout` for at least one.
  EventBatch events_after(std::uint64_t after, std::chrono::milliseconds timeout) const;

  void stop();
  bool stopped() const;
  long generation() const;
  CommandLog command_log() const;

 private:
  void run();
  void publish(Event e);

  std::string id_;
  SessionOptions options_;
  Room shape_;  // initial target; every later target must match its size and doors

  mutable std::mutex cmd_mutex_;
  std::condition_variable cmd_cv_;
  std::deque<Command> commands_;
  bool stop_requested_ = false;

  mutable std::mutex event_mutex_;
  mutable std::condition_variable event_cv_;
  std::deque<std::pair<std::uint64_t, nlohmann::json>> events_;
  std::uint64_t next_seq_ = 1;
  bool finished_ = false;
  long generation_ = 0;
  CommandLog log_;

  std::unique_ptr<SessionCore> core_;
  std::thread worker_;
};

/// Owns the live sessions, keyed by id ("s1", "s2", ...).
class SessionManager {
 public:
  explicit SessionManager(SessionOptions options = {}) : options_(options) {}

  std::string open(EngineConfig config, Room target);
  /// Throws ProtocolError(UnknownSession).
  std::shared_ptr<Session> get(const std::string& id) const;
  /// Stops and forgets the session; false when it did not exist.
  bool close(const std::string& id);
  std::vector<std::string> ids() const;

 private:
  SessionOptions options_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t counter_ = 0;
};

}  // namespace roomqd
