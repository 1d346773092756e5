#pragma once

#include <memory>
#include <string>
#include <thread>

#include "roomqd/config.hpp"
#include "roomqd/session.hpp"

namespace httplib {
class Server;
}

namespace roomqd::tools {

struct ServiceOptions {
  EngineConfig defaults;     // config for sessions that do not send one
  std::string default_target = "basic";
  SessionOptions session;
  int max_poll_ms = 30000;
};

/// HTTP binding of the session protocol.
///
///   POST   /sessions                     {config?, target?}      -> 201 {session, config, target}
///   POST   /sessions/{id}/commands       command envelope        -> 202 {session, seq, accepted}
///   GET    /sessions/{id}/events?after=N&timeout_ms=T             -> 200 {session, events, next, oldest, stopped}
///   DELETE /sessions/{id}                                         -> 200 {session, closed}
///   GET    /health                                                -> 200 {status}
///
/// `target` is a room object or the name of a bundled room. Failures answer
/// {error: {code, message}}; for a known session they are also published as
/// error events.
class HttpService {
 public:
  explicit HttpService(ServiceOptions options = {});
  ~HttpService();
  HttpService(const HttpService&) = delete;
  HttpService& operator=(const HttpService&) = delete;

  /// Binds the socket; port 0 picks a free port. Returns the bound port.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  void listen();
  /// Serves on a background thread.
  void start();
  void stop();

  SessionManager& sessions() noexcept { return sessions_; }

 private:
  void routes();

  ServiceOptions options_;
  SessionManager sessions_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

}  // namespace roomqd::tools
