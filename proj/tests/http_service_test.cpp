#include "roomqd_tools/http_service.hpp"

#include <httplib.h>

#include <gtest/gtest.h>

#include "roomqd/room_io.hpp"
#include "roomqd/targets.hpp"

namespace roomqd::tools {
namespace {

using nlohmann::json;

class Http : public ::testing::Test {
 protected:
  void SetUp() override {
    ServiceOptions opt;
    opt.defaults.pop_size = 80;
    opt.defaults.publish_gen = 10;
    opt.defaults.cell_capacity = 5;
    service_ = std::make_unique<HttpService>(opt);
    port_ = service_->bind("127.0.0.1", 0);
    service_->start();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    client_->set_read_timeout(30, 0);
  }
  void TearDown() override { service_->stop(); }

  json post(const std::string& path, const json& body, int expect) {
    auto res = client_->Post(path, body.dump(), "application/json");
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, expect) << res->body;
    return json::parse(res->body);
  }
  json get(const std::string& path, int expect = 200) {
    auto res = client_->Get(path);
    EXPECT_TRUE(res);
    if (!res) return {};
    EXPECT_EQ(res->status, expect) << res->body;
    return json::parse(res->body);
  }
  std::string open() { return post("/sessions", json::object(), 201)["session"].get<std::string>(); }

  // Polls until an event of `type` shows up; returns every event seen.
  std::vector<json> poll_until(const std::string& id, const std::string& type) {
    std::vector<json> seen;
    std::uint64_t after = 0;
    for (int i = 0; i < 100; ++i) {
      const auto batch = get("/sessions/" + id + "/events?after=" + std::to_string(after) + "&timeout_ms=500");
      after = batch["next"].get<std::uint64_t>();
      bool found = false;
      for (const auto& e : batch["events"]) {
        seen.push_back(e);
        found = found || e["type"] == type;
      }
      if (found || batch["stopped"].get<bool>()) break;
    }
    return seen;
  }

  std::unique_ptr<HttpService> service_;
  std::unique_ptr<httplib::Client> client_;
  int port_ = 0;
};

bool has_type(const std::vector<json>& evs, const std::string& type) {
  return std::any_of(evs.begin(), evs.end(), [&](const json& e) { return e["type"] == type; });
}

TEST_F(Http, Health) { EXPECT_EQ(get("/health")["status"], "ok"); }

TEST_F(Http, OpenedSessionStreamsElites) {
  const auto created = post("/sessions", {{"target", "complex"}}, 201);
  EXPECT_EQ(created["session"], "s1");
  EXPECT_EQ(room_from_json(created["target"]), complex_room());
  EXPECT_EQ(created["config"]["pop_size"], 80);
  const auto evs = poll_until("s1", "elites_updated");
  ASSERT_TRUE(has_type(evs, "elites_updated"));
  for (const auto& e : evs) EXPECT_EQ(e["session"], "s1");
}

TEST_F(Http, CommandsAreAcceptedAndEchoed) {
  const auto id = open();
  const Room edited = basic_room().with_tile({4, 3}, Tile::Treasure);
  const auto ack = post("/sessions/" + id + "/commands",
                        {{"type", "set_target"}, {"seq", 3}, {"session", id}, {"payload", room_to_json(edited)}}, 202);
  EXPECT_EQ(ack["seq"], 3);
  const auto evs = poll_until(id, "target_echo");
  ASSERT_TRUE(has_type(evs, "target_echo"));
  for (const auto& e : evs)
    if (e["type"] == "target_echo") EXPECT_EQ(room_from_json(e["payload"]["room"]), edited);
}

TEST_F(Http, BadMessagesAnswerAndReachTheStream) {
  const auto id = open();
  const auto path = "/sessions/" + id + "/commands";
  auto res = client_->Post(path, "{not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  EXPECT_EQ(json::parse(res->body)["error"]["code"], "malformed_message");
  EXPECT_EQ(post(path, {{"type", "jump"}, {"seq", 8}}, 400)["error"]["code"], "unknown_command");
  const auto wrong = Room::filled(13, 7, Tile::Floor, {{0, 3}});
  EXPECT_EQ(post(path, {{"type", "set_target"}, {"payload", room_to_json(wrong)}}, 400)["error"]["code"],
            "shape_mismatch");
  const auto evs = poll_until(id, "elites_updated");
  int errors = 0;
  for (const auto& e : evs) errors += e["type"] == "error";
  EXPECT_EQ(errors, 3);
  EXPECT_TRUE(has_type(evs, "elites_updated"));
}

TEST_F(Http, UnknownSessionIs404) {
  EXPECT_EQ(get("/sessions/s42/events", 404)["error"]["code"], "unknown_session");
  EXPECT_EQ(post("/sessions/s42/commands", {{"type", "stop"}}, 404)["error"]["code"], "unknown_session");
  auto res = client_->Delete("/sessions/s42");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
}

TEST_F(Http, StopAndClose) {
  const auto id = open();
  post("/sessions/" + id + "/commands", {{"type", "stop"}}, 202);
  const auto evs = poll_until(id, "never");
  (void)evs;
  EXPECT_TRUE(get("/sessions/" + id + "/events?timeout_ms=10")["stopped"].get<bool>());
  EXPECT_EQ(post("/sessions/" + id + "/commands", {{"type", "restart"}}, 409)["error"]["code"], "session_stopped");
  auto res = client_->Delete("/sessions/" + id);
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_TRUE(service_->sessions().ids().empty());
}

TEST_F(Http, BadSessionRequests) {
  EXPECT_EQ(post("/sessions", {{"config", {{"pop_size", -3}}}}, 400)["error"]["code"], "invalid_dimensions");
  EXPECT_EQ(post("/sessions", {{"target", "nowhere.room"}}, 400)["error"]["code"], "malformed_room");
  auto res = client_->Post("/sessions", "[1]", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);
  const auto id = open();
  EXPECT_EQ(get("/sessions/" + id + "/events?after=x", 400)["error"]["code"], "malformed_message");
}

}  // namespace
}  // namespace roomqd::tools
