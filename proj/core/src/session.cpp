#include "roomqd/session.hpp"

#include <algorithm>

#include "roomqd/operators.hpp"

namespace roomqd {

using nlohmann::json;

nlohmann::json command_log_to_json(const CommandLog& log) {
  json out = json::array();
  for (const auto& a : log) out.push_back({{"generation", a.generation}, {"command", command_to_json(a.command, "")}});
  return out;
}

CommandLog command_log_from_json(const json& j) {
  if (!j.is_array()) throw ProtocolError(ErrorCode::MalformedMessage, "command log must be an array");
  CommandLog log;
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("generation") || !e["generation"].is_number_integer() || !e.contains("command")) {
      throw ProtocolError(ErrorCode::MalformedMessage, "log entry needs generation and command");
    }
    log.push_back({e["generation"].get<long>(), parse_command(e["command"])});
  }
  return log;
}

// ------------------------------------------------------------ SessionCore

SessionCore::SessionCore(EngineConfig config, Room target) : engine_(std::move(config), std::move(target)) {}

std::vector<Event> SessionCore::apply(const Command& cmd) {
  log_.push_back({engine_.generation(), cmd});
  std::vector<Event> out;
  if (stopped_) {
    out.push_back(error_event(ErrorCode::SessionStopped, "session is stopped", cmd.seq));
    return out;
  }
  auto retarget = [&](Room room, std::string_view reason) {
    if (!room.same_shape(engine_.target())) {
      out.push_back(error_event(ErrorCode::ShapeMismatch, "room must keep the session's size and doors", cmd.seq));
      return;
    }
    engine_.update_target(room);
    out.push_back(target_event(engine_.target(), reason));
  };
  const auto& body = cmd.body;
  if (const auto* c = std::get_if<SetTarget>(&body)) {
    retarget(c->room, "set_target");
  } else if (const auto* c = std::get_if<LockTiles>(&body)) {
    try {
      retarget(engine_.target().with_locked(c->coords), "lock_tiles");
    } catch (const RoomError& e) {
      out.push_back(error_event(ErrorCode::MalformedRoom, e.what(), cmd.seq));
    }
  } else if (const auto* c = std::get_if<SetDimensions>(&body)) {
    try {
      engine_.change_dimensions(c->dims);
    } catch (const std::invalid_argument& e) {
      out.push_back(error_event(ErrorCode::InvalidDimensions, e.what(), cmd.seq));
    }
  } else if (const auto* c = std::get_if<ApplySuggestion>(&body)) {
    const Archive& archive = engine_.archive();
    std::size_t idx = 0;
    try {
      idx = archive.index_of(c->cell);
    } catch (const std::out_of_range& e) {
      out.push_back(error_event(ErrorCode::InvalidCell, e.what(), cmd.seq));
      return out;
    }
    const auto& feasible = archive.cell(idx).feasible;
    if (feasible.empty()) {
      out.push_back(error_event(ErrorCode::EmptyCell, "no feasible elite in that cell", cmd.seq));
      return out;
    }
    retarget(adopt_target_frame(feasible.front().room, engine_.target()), "apply_suggestion");
  } else if (std::holds_alternative<Restart>(body)) {
    engine_.restart();
  } else if (std::holds_alternative<Stop>(body)) {
    stopped_ = true;
  }
  return out;
}

std::optional<Event> SessionCore::step() {
  if (stopped_) return std::nullopt;
  if (auto b = engine_.advance()) return elites_event(*b);
  return std::nullopt;
}

std::vector<Event> replay(const EngineConfig& config, const Room& target, const CommandLog& log, long generations) {
  SessionCore core(config, target);
  std::vector<Event> events;
  std::size_t next = 0;
  auto apply_due = [&] {
    while (next < log.size() && log[next].generation <= core.engine().generation()) {
      auto evs = core.apply(log[next++].command);
      events.insert(events.end(), evs.begin(), evs.end());
    }
  };
  while (core.engine().generation() < generations && !core.stopped()) {
    apply_due();
    if (core.stopped()) break;
    if (auto e = core.step()) events.push_back(std::move(*e));
  }
  apply_due();
  return events;
}

// ---------------------------------------------------------------- Session

Session::Session(std::string id, EngineConfig config, Room target, SessionOptions options)
    : id_(std::move(id)), options_(options), shape_(target) {
  if (options_.command_capacity == 0 || options_.event_capacity == 0) {
    throw std::invalid_argument("session queues need a positive capacity");
  }
  core_ = std::make_unique<SessionCore>(std::move(config), std::move(target));
  worker_ = std::thread([this] { run(); });
}

Session::~Session() {
  stop();
  if (worker_.joinable()) worker_.join();
}

void Session::send(Command cmd, std::chrono::milliseconds wait) {
  const std::uint64_t seq = cmd.seq;
  if (const auto* st = std::get_if<SetTarget>(&cmd.body); st && !st->room.same_shape(shape_)) {
    report_error(ErrorCode::ShapeMismatch, "room must keep the session's size and doors", seq);
    throw ProtocolError(ErrorCode::ShapeMismatch, "room must keep the session's size and doors");
  }
  std::unique_lock lock(cmd_mutex_);
  const bool room = cmd_cv_.wait_for(lock, wait, [&] {
    return stop_requested_ || commands_.size() < options_.command_capacity;
  });
  if (stop_requested_) {
    lock.unlock();
    report_error(ErrorCode::SessionStopped, "session is stopped", seq);
    throw ProtocolError(ErrorCode::SessionStopped, "session is stopped");
  }
  if (!room) {
    lock.unlock();
    report_error(ErrorCode::QueueFull, "command queue is full", seq);
    throw ProtocolError(ErrorCode::QueueFull, "command queue is full");
  }
  if (std::holds_alternative<Stop>(cmd.body)) stop_requested_ = true;
  commands_.push_back(std::move(cmd));
  cmd_cv_.notify_all();
}

void Session::report_error(ErrorCode code, const std::string& message, std::uint64_t command_seq) {
  publish(error_event(code, message, command_seq));
}

void Session::publish(Event e) {
  {
    std::lock_guard lock(event_mutex_);
    if (e.type == EventType::Stats) {
      events_.erase(std::remove_if(events_.begin(), events_.end(),
                                   [](const auto& p) { return p.second["type"] == "stats"; }),
                    events_.end());
    }
    const std::uint64_t seq = next_seq_++;
    events_.emplace_back(seq, event_envelope(e, id_, seq));
    while (events_.size() > options_.event_capacity) events_.pop_front();
  }
  event_cv_.notify_all();
}

EventBatch Session::events_after(std::uint64_t after, std::chrono::milliseconds timeout) const {
  std::unique_lock lock(event_mutex_);
  event_cv_.wait_for(lock, timeout, [&] { return finished_ || next_seq_ - 1 > after; });
  EventBatch batch;
  batch.next = after;
  batch.stopped = finished_;
  batch.oldest = events_.empty() ? 0 : events_.front().first;
  for (const auto& [seq, env] : events_) {
    if (seq <= after) continue;
    batch.events.push_back(env);
    batch.next = seq;
  }
  return batch;
}

void Session::stop() {
  {
    std::lock_guard lock(cmd_mutex_);
    stop_requested_ = true;
  }
  cmd_cv_.notify_all();
}

bool Session::stopped() const {
  std::lock_guard lock(event_mutex_);
  return finished_;
}

long Session::generation() const {
  std::lock_guard lock(event_mutex_);
  return generation_;
}

CommandLog Session::command_log() const {
  std::lock_guard lock(event_mutex_);
  return log_;
}

void Session::run() {
  using clock = std::chrono::steady_clock;
  auto last_stats = clock::now();
  long last_stats_gen = 0;
  for (;;) {
    std::deque<Command> batch;
    bool halt = false;
    {
      std::unique_lock lock(cmd_mutex_);
      const bool paused =
          options_.max_generations > 0 && core_->engine().generation() >= options_.max_generations;
      if (paused) cmd_cv_.wait(lock, [&] { return stop_requested_ || !commands_.empty(); });
      batch.swap(commands_);
      halt = stop_requested_ && batch.empty();
    }
    cmd_cv_.notify_all();
    for (const auto& cmd : batch) {
      auto events = core_->apply(cmd);
      {
        // the log must show the command before anyone can see its events
        std::lock_guard lock(event_mutex_);
        log_.push_back(core_->log().back());
      }
      for (auto& e : events) publish(std::move(e));
      if (core_->stopped()) break;
    }
    if (halt || core_->stopped()) break;
    const bool paused = options_.max_generations > 0 && core_->engine().generation() >= options_.max_generations;
    if (paused) continue;
    auto elites = core_->step();
    {
      std::lock_guard lock(event_mutex_);
      generation_ = core_->engine().generation();
    }
    if (elites) {
      publish(std::move(*elites));
      const auto now = clock::now();
      const double secs = std::chrono::duration<double>(now - last_stats).count();
      const long gen = core_->engine().generation();
      const auto snap = core_->engine().snapshot();
      publish({EventType::Stats,
               {{"generation", gen},
                {"occupied_cells", snap.occupied_feasible_cells()},
                {"feasible", snap.feasible_total},
                {"infeasible", snap.infeasible_total},
                {"generations_per_second", secs > 0 ? static_cast<double>(gen - last_stats_gen) / secs : 0.0}}});
      last_stats = now;
      last_stats_gen = gen;
    }
  }
  {
    std::lock_guard lock(event_mutex_);
    finished_ = true;
    log_ = core_->log();
  }
  {
    std::lock_guard lock(cmd_mutex_);
    stop_requested_ = true;
  }
  cmd_cv_.notify_all();
  event_cv_.notify_all();
}

// --------------------------------------------------------- SessionManager

std::string SessionManager::open(EngineConfig config, Room target) {
  config.validate();
  std::lock_guard lock(mutex_);
  std::string id = "s" + std::to_string(++counter_);
  sessions_.emplace(id, std::make_shared<Session>(id, std::move(config), std::move(target), options_));
  return id;
}

std::shared_ptr<Session> SessionManager::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ProtocolError(ErrorCode::UnknownSession, "unknown session '" + id + "'");
  return it->second;
}

bool SessionManager::close(const std::string& id) {
  std::shared_ptr<Session> victim;
  {
    std::lock_guard lock(mutex_);
    const auto it = sessions_.find(id);
    if (it == sessions_.end()) return false;
    victim = std::move(it->second);
    sessions_.erase(it);
  }
  victim->stop();
  return true;
}

std::vector<std::string> SessionManager::ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, s] : sessions_) out.push_back(id);
  return out;
}

}  // namespace roomqd
