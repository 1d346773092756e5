#include "roomqd_tools/http_service.hpp"

#include <httplib.h>

#include "roomqd/room_io.hpp"
#include "roomqd_tools/experiments.hpp"

namespace roomqd::tools {

using nlohmann::json;

namespace {

int status_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnknownSession: return 404;
    case ErrorCode::SessionStopped: return 409;
    case ErrorCode::QueueFull: return 503;
    default: return 400;
  }
}

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, ErrorCode code, const std::string& message) {
  reply(res, status_for(code), {{"error", {{"code", name(code)}, {"message", message}}}});
}

}  // namespace

HttpService::HttpService(ServiceOptions options)
    : options_(std::move(options)), sessions_(options_.session), server_(std::make_unique<httplib::Server>()) {
  options_.defaults.validate();
  routes();
}

HttpService::~HttpService() { stop(); }

void HttpService::routes() {
  auto& srv = *server_;

  srv.Get("/health", [](const httplib::Request&, httplib::Response& res) { reply(res, 200, {{"status", "ok"}}); });

  srv.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    json body = json::object();
    if (!req.body.empty()) {
      body = json::parse(req.body, nullptr, false);
      if (body.is_discarded() || !body.is_object()) {
        return reply_error(res, ErrorCode::MalformedMessage, "body must be a JSON object");
      }
    }
    EngineConfig config = options_.defaults;
    Room target = load_target(options_.default_target);
    try {
      if (body.contains("config")) config = config_from_json(body["config"], config);
      config.validate();
    } catch (const std::exception& e) {
      return reply_error(res, ErrorCode::InvalidDimensions, e.what());
    }
    try {
      if (body.contains("target")) {
        const auto& t = body["target"];
        target = t.is_string() ? load_target(t.get<std::string>()) : room_from_json(t);
      }
    } catch (const std::exception& e) {
      return reply_error(res, ErrorCode::MalformedRoom, e.what());
    }
    const std::string id = sessions_.open(config, target);
    reply(res, 201, {{"session", id}, {"config", config_to_json(config)}, {"target", room_to_json(target)}});
  });

  srv.Post(R"(/sessions/([^/]+)/commands)", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    std::shared_ptr<Session> session;
    try {
      session = sessions_.get(id);
    } catch (const ProtocolError& e) {
      return reply_error(res, e.code(), e.what());
    }
    const json msg = json::parse(req.body, nullptr, false);
    std::uint64_t seq = 0;
    if (!msg.is_discarded() && msg.is_object() && msg.contains("seq") && msg["seq"].is_number_unsigned()) {
      seq = msg["seq"].get<std::uint64_t>();
    }
    try {
      if (msg.is_discarded()) throw ProtocolError(ErrorCode::MalformedMessage, "body is not valid JSON");
      std::string addressed = id;
      Command cmd = parse_command(msg, &addressed);
      if (addressed != id) throw ProtocolError(ErrorCode::MalformedMessage, "envelope names another session");
      seq = cmd.seq;
      session->send(std::move(cmd));
    } catch (const ProtocolError& e) {
      // send() publishes its own rejections; parse failures are published here.
      if (e.code() != ErrorCode::ShapeMismatch && e.code() != ErrorCode::SessionStopped &&
          e.code() != ErrorCode::QueueFull) {
        session->report_error(e.code(), e.what(), seq);
      }
      return reply_error(res, e.code(), e.what());
    }
    reply(res, 202, {{"session", id}, {"seq", seq}, {"accepted", true}});
  });

  srv.Get(R"(/sessions/([^/]+)/events)", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    std::shared_ptr<Session> session;
    try {
      session = sessions_.get(id);
    } catch (const ProtocolError& e) {
      return reply_error(res, e.code(), e.what());
    }
    std::uint64_t after = 0;
    long timeout = 0;
    try {
      if (req.has_param("after")) after = std::stoull(req.get_param_value("after"));
      if (req.has_param("timeout_ms")) timeout = std::stol(req.get_param_value("timeout_ms"));
    } catch (const std::exception&) {
      return reply_error(res, ErrorCode::MalformedMessage, "after and timeout_ms must be integers");
    }
    timeout = std::clamp<long>(timeout, 0, options_.max_poll_ms);
    const auto batch = session->events_after(after, std::chrono::milliseconds(timeout));
    reply(res, 200,
          {{"session", id}, {"events", batch.events}, {"next", batch.next}, {"oldest", batch.oldest},
           {"stopped", batch.stopped}});
  });

  srv.Delete(R"(/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    if (!sessions_.close(id)) return reply_error(res, ErrorCode::UnknownSession, "unknown session '" + id + "'");
    reply(res, 200, {{"session", id}, {"closed", true}});
  });
}

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = server_->bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!server_->bind_to_port(host, port)) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpService::listen() { server_->listen_after_bind(); }

void HttpService::start() {
  thread_ = std::thread([this] { listen(); });
  server_->wait_until_ready();
}

void HttpService::stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
  for (const auto& id : sessions_.ids()) sessions_.close(id);
}

}  // namespace roomqd::tools
