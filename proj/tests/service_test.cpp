#include <gtest/gtest.h>
#include <httplib.h>

#include <cmath>
#include <thread>

#include "test_support.hpp"
#include "viewadapt/errors.hpp"
#include "viewadapt/service/server.hpp"
#include "viewadapt/service/session.hpp"
#include "viewadapt/service/wire.hpp"

namespace viewadapt::service {
namespace {

using nlohmann::json;

std::shared_ptr<Session> make(SessionManager& m, const json& body = json::object()) {
  return m.create(body);
}

void expect_budget_respected(const FrameState& f) {
  if (!f.totals.feasible) return;
  EXPECT_LE(f.totals.total_bandwidth, f.totals.budget * (1 + 1e-9) + 1e-9) << "tick " << f.tick;
  double sum = 0.0;
  for (const auto& s : f.streams) sum += *s.adapted_bandwidth;
  EXPECT_NEAR(sum, f.totals.total_bandwidth, 1e-9 * std::max(1.0, sum));
}

TEST(Session, DefaultConfig) {
  SessionManager m;
  auto s = make(m);
  EXPECT_EQ(s->id(), "s1");
  const auto f = s->frame();
  EXPECT_EQ(f->tick, 0u);
  EXPECT_EQ(f->participants.size(), 10u);
  EXPECT_LE(f->streams.size(), 100u);
  EXPECT_EQ(s->run_state(), RunState::kPaused);
  EXPECT_EQ(s->config().scene.cameras_per_site, 10);
  expect_budget_respected(*f);
  EXPECT_EQ(make(m)->id(), "s2");
}

TEST(Session, EmptyRoom) {
  SessionManager m;
  auto s = make(m, {{"participants", 0}});
  const auto f = s->step(3);
  EXPECT_TRUE(f->participants.empty());
  EXPECT_TRUE(f->streams.empty());
  EXPECT_TRUE(f->totals.feasible);
}

TEST(Session, InvalidConfigsListFields) {
  SessionManager m;
  try {
    make(m, {{"budget_fraction", -0.5}, {"tick_rate", 0}, {"bogus", 1}});
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.fields(), (std::vector<std::string>{"bogus", "budget_fraction", "tick_rate"}));
  }
  EXPECT_THROW(make(m, {{"algorithm", "exact"}}), ValidationError);
  EXPECT_THROW(make(m, {{"viewer", {{"main_fov_deg", 200}}}}), ValidationError);
  EXPECT_THROW(make(m, {{"mobility", {{"p_stay", 2}}}}), ValidationError);
  EXPECT_THROW(make(m, {{"triple", {1, 2}}}), ValidationError);
  EXPECT_TRUE(m.ids().empty());
}

TEST(Session, StepZeroReturnsCurrentFrame) {
  SessionManager m;
  auto s = make(m);
  s->step(4);
  const auto before = s->frame();
  EXPECT_EQ(s->step(0), before);
  EXPECT_THROW(s->step(-1), InvalidArgument);
}

TEST(Session, StayOnlyKeepsClassifications) {
  SessionManager m;
  auto s = make(m, {{"mobility", {{"p_stay", 1.0}, {"p_walk", 0.0}, {"p_turn", 0.0}}}});
  const auto first = to_json(*s->frame());
  for (int i = 0; i < 100; ++i) {
    const auto f = to_json(*s->step(1));
    EXPECT_EQ(f["streams"], first["streams"]);
    EXPECT_EQ(f["participants"], first["participants"]);
  }
}

TEST(Session, SameSeedSameFrames) {
  SessionManager m;
  auto a = make(m, {{"seed", 77}});
  auto b = make(m, {{"seed", 77}});
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(to_json(*a->step(1)).dump(), to_json(*b->step(1)).dump());
  }
  auto c = make(m, {{"seed", 78}});
  EXPECT_NE(to_json(*c->frame()).dump(), to_json(*a->frame()).dump());
}

TEST(Session, BudgetPatchLandsOnAcknowledgedTick) {
  SessionManager m;
  auto s = make(m, {{"budget_fraction", 1.0}});
  s->step(5);
  const auto ack = s->queue_patch({{"budget_fraction", 0.5}});
  EXPECT_EQ(ack, 6u);
  const auto f = s->step(1);
  EXPECT_EQ(f->tick, ack);
  EXPECT_EQ(f->params_version, 1u);
  EXPECT_LE(f->totals.total_bandwidth, 0.5 * f->totals.full_bandwidth * (1 + 1e-9));
  expect_budget_respected(*f);
}

TEST(Session, OnePatchPerTick) {
  SessionManager m;
  auto s = make(m);
  EXPECT_EQ(s->queue_patch({{"budget_fraction", 0.5}}), 1u);
  EXPECT_EQ(s->queue_patch({{"budget_fraction", 0.7}}), 2u);
  EXPECT_EQ(s->step(1)->params_version, 1u);
  EXPECT_DOUBLE_EQ(s->config().budget.value, 0.5);
  EXPECT_EQ(s->step(1)->params_version, 2u);
  EXPECT_DOUBLE_EQ(s->config().budget.value, 0.7);
}

TEST(Session, PatchValidatedOnArrival) {
  SessionManager m;
  auto s = make(m);
  EXPECT_THROW(s->queue_patch({{"seed", 4}}), ValidationError);
  EXPECT_THROW(s->queue_patch({{"viewer", {{"heading", 3}}}}), ValidationError);
  EXPECT_THROW(s->queue_patch({{"budget_mbps", 10}, {"budget_fraction", 0.5}}), ValidationError);
  s->step(1);
  EXPECT_EQ(s->frame()->params_version, 0u);
}

TEST(Session, RotatingViewerReclassifies) {
  SessionManager m;
  auto s = make(m, {{"participants", 30},
                    {"mobility", {{"p_stay", 1.0}, {"p_walk", 0.0}, {"p_turn", 0.0}}}});
  const auto before = s->step(1);
  s->queue_patch({{"viewer", {{"heading_deg", 180.0}}}});
  const auto after = s->step(1);
  EXPECT_NEAR(after->viewer.heading, kPi, 1e-12);
  int main_before = 0;
  for (std::size_t i = 0; i < after->participants.size(); ++i) {
    const auto& p = after->participants[i];
    const double off = testing::off_axis_acos(p.position.x, p.position.y, kPi);
    const auto want = off <= kPi / 6 + 1e-9   ? view::Level::kMain
                      : off <= kPi / 2 + 1e-9 ? view::Level::kWide
                                              : view::Level::kExcluded;
    EXPECT_EQ(p.first_level, want);
    if (before->participants[i].first_level == view::Level::kMain) {
      ++main_before;
      EXPECT_NE(p.first_level, view::Level::kMain);
    }
  }
  EXPECT_GT(main_before, 0);
}

TEST(Session, AlgorithmSwitchKeepsBudget) {
  SessionManager m;
  auto s = make(m, {{"budget_fraction", 0.45}});
  s->queue_patch({{"algorithm", "aggressive"}});
  const auto f = s->step(1);
  EXPECT_EQ(f->algorithm, adapt::Algorithm::kAggressive);
  expect_budget_respected(*f);
  s->queue_patch({{"algorithm", "round_robin"}});
  expect_budget_respected(*s->step(1));
}

TEST(Session, SceneReshapeKeepsTick) {
  SessionManager m;
  auto s = make(m);
  s->step(3);
  s->queue_patch({{"participants", 4}, {"cameras_per_site", 3}});
  const auto f = s->step(1);
  EXPECT_EQ(f->tick, 4u);
  EXPECT_EQ(f->participants.size(), 4u);
  EXPECT_LE(f->streams.size(), 12u);
}

TEST(Session, InfeasibleBudgetFrame) {
  SessionManager m;
  auto s = make(m, {{"budget_mbps", 1.0}});
  const auto f = s->frame();
  ASSERT_FALSE(f->streams.empty());
  EXPECT_FALSE(f->totals.feasible);
  EXPECT_FALSE(f->streams[0].adapted_bandwidth.has_value());
  const auto j = to_json(*f);
  EXPECT_TRUE(j["streams"][0]["adapted_bandwidth"].is_null());
  EXPECT_EQ(j["totals"]["feasible"], false);
}

TEST(Session, EveryFrameWithinBudget) {
  SessionManager m;
  for (const char* algo : {"compromise", "round_robin", "aggressive"}) {
    auto s = make(m, {{"algorithm", algo}, {"budget_fraction", 0.35}, {"placement", "gmm"}});
    for (int i = 0; i < 200; ++i) expect_budget_respected(*s->step(1));
  }
}

TEST(Session, ReplayReproducesRun) {
  SessionManager m;
  auto a = make(m, {{"seed", 5}, {"facing", "at_least_one"}});
  std::vector<std::string> frames;
  for (int t = 1; t <= 40; ++t) {
    if (t == 7) a->queue_patch({{"budget_fraction", 0.4}});
    if (t == 15) a->queue_patch({{"viewer", {{"heading_deg", 90}}}});
    if (t == 16) a->queue_patch({{"participants", 6}});
    if (t == 30) a->queue_patch({{"facing", "random"}});
    frames.push_back(to_json(*a->step(1)).dump());
  }
  const auto replay = a->replay();
  EXPECT_EQ(replay["patches"].size(), 4u);
  EXPECT_EQ(replay["seed"], 5);
  auto b = m.create(replay);
  for (int t = 1; t <= 40; ++t) {
    EXPECT_EQ(to_json(*b->step(1)).dump(), frames[static_cast<std::size_t>(t - 1)]) << t;
  }
  json bad = replay;
  bad["patches"][0]["patch"] = {{"budget_fraction", -1}};
  EXPECT_THROW(m.create(bad), ValidationError);
}

TEST(Session, FreeRunDeliversOrderedFrames) {
  SessionManager m;
  auto s = make(m, {{"tick_rate", 60}});
  s->resume();
  EXPECT_EQ(s->run_state(), RunState::kRunning);
  std::uint64_t last = 0;
  int seen = 0;
  const auto deadline = std::chrono::steady_clock::now() + std::chrono::seconds(5);
  while (seen < 10 && std::chrono::steady_clock::now() < deadline) {
    for (const auto& f : s->wait_frames(last, std::chrono::milliseconds(200))) {
      EXPECT_EQ(f->tick, last + 1);
      last = f->tick;
      ++seen;
    }
  }
  s->pause();
  EXPECT_GE(seen, 10);
  const auto settled = s->frame()->tick;
  std::this_thread::sleep_for(std::chrono::milliseconds(100));
  EXPECT_LE(s->frame()->tick, settled + 1);
}

TEST(Session, HistoryIsBounded) {
  SessionManager m;
  auto s = make(m, {{"participants", 2}, {"cameras_per_site", 1}});
  s->step(static_cast<int>(Session::kHistoryLimit) + 10);
  const auto frames = s->wait_frames(0, std::chrono::milliseconds(0));
  EXPECT_EQ(frames.size(), Session::kHistoryLimit);
  EXPECT_EQ(frames.back()->tick, Session::kHistoryLimit + 10);
}

TEST(Wire, ConfigRoundTrip) {
  SessionConfig c;
  c.seed = 9;
  c.scene.viewer.heading = deg_to_rad(45);
  c.budget = {BudgetSpec::Mode::kMbps, 123.0};
  const auto back = merge_config(SessionConfig{}, to_json(c), true);
  EXPECT_EQ(back.seed, 9u);
  EXPECT_NEAR(back.scene.viewer.heading, deg_to_rad(45), 1e-12);
  EXPECT_EQ(back.budget, c.budget);
  EXPECT_EQ(to_json(back), to_json(c));
}

// End-to-end over HTTP on a loopback port.
class HttpTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = std::make_unique<Server>(std::make_shared<SessionManager>());
    port_ = server_->bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    client_->set_read_timeout(5, 0);
    for (int i = 0; i < 100 && !server_->running(); ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
  }
  void TearDown() override {
    server_->stop();
    thread_.join();
  }

  json post(const std::string& path, const json& body, int expect_status) {
    auto r = client_->Post(path, body.dump(), "application/json");
    EXPECT_TRUE(r);
    if (!r) return {};
    EXPECT_EQ(r->status, expect_status) << r->body;
    return json::parse(r->body);
  }
  json get(const std::string& path, int expect_status = 200) {
    auto r = client_->Get(path);
    EXPECT_TRUE(r);
    if (!r) return {};
    EXPECT_EQ(r->status, expect_status) << r->body;
    return json::parse(r->body);
  }
  json patch(const std::string& path, const json& body, int expect_status) {
    auto r = client_->Patch(path, body.dump(), "application/json");
    EXPECT_TRUE(r);
    if (!r) return {};
    EXPECT_EQ(r->status, expect_status) << r->body;
    return json::parse(r->body);
  }

  std::unique_ptr<Server> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(HttpTest, CreateStepPatchDelete) {
  EXPECT_EQ(get("/health")["status"], "ok");
  const auto created = post("/sessions", {{"seed", 3}, {"budget_fraction", 1.0}}, 201);
  const std::string id = created["session_id"];
  EXPECT_EQ(created["tick"], 0);
  EXPECT_EQ(get("/sessions")["sessions"], json::array({id}));

  const auto frame = post("/sessions/" + id + "/step", {{"n", 3}}, 200);
  EXPECT_EQ(frame["tick"], 3);
  EXPECT_EQ(frame["participants"].size(), 10u);
  EXPECT_EQ(frame["totals"]["adaptation_ratio"], 1.0);

  const auto ack = patch("/sessions/" + id + "/params", {{"budget_fraction", 0.5}}, 200);
  EXPECT_EQ(ack["acknowledged_tick"], 4);
  const auto next = post("/sessions/" + id + "/step", json::object(), 200);
  EXPECT_EQ(next["tick"], 4);
  EXPECT_LE(next["totals"]["total_bandwidth"].get<double>(),
            0.5 * next["totals"]["full_bandwidth"].get<double>() * (1 + 1e-9));
  EXPECT_EQ(get("/sessions/" + id + "/params")["budget_fraction"], 0.5);

  const auto same = post("/sessions/" + id + "/step", {{"n", 0}}, 200);
  EXPECT_EQ(same, get("/sessions/" + id + "/frame"));

  auto del = client_->Delete("/sessions/" + id);
  ASSERT_TRUE(del);
  EXPECT_EQ(del->status, 200);
  EXPECT_EQ(get("/sessions/" + id + "/frame", 404)["error"]["code"], "unknown_session");
}

TEST_F(HttpTest, ValidationErrors) {
  const auto bad = post("/sessions", {{"budget_fraction", -1}, {"participants", "many"}}, 422);
  EXPECT_EQ(bad["error"]["code"], "validation_error");
  EXPECT_EQ(bad["error"]["fields"], json::array({"budget_fraction", "participants"}));

  auto r = client_->Post("/sessions", "{not json", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 400);

  const std::string id = post("/sessions", json::object(), 201)["session_id"];
  EXPECT_EQ(patch("/sessions/" + id + "/params", {{"viewer", {{"x", 100}}}}, 422)["error"]["fields"],
            json::array({"viewer.position"}));
  EXPECT_EQ(post("/sessions/" + id + "/step", {{"n", -2}}, 422)["error"]["fields"],
            json::array({"n"}));
  EXPECT_EQ(patch("/sessions/nope/params", {{"budget_fraction", 0.5}}, 404)["error"]["code"],
            "unknown_session");
}

TEST_F(HttpTest, EventStreamIsGapFree) {
  const std::string id = post("/sessions", {{"tick_rate", 60}}, 201)["session_id"];
  post("/sessions/" + id + "/resume", json::object(), 200);
  std::string buffer;
  std::vector<json> frames;
  auto r = client_->Get("/sessions/" + id + "/stream", [&](const char* data, std::size_t len) {
    buffer.append(data, len);
    std::size_t end;
    while ((end = buffer.find("\n\n")) != std::string::npos) {
      const std::string event = buffer.substr(0, end);
      buffer.erase(0, end + 2);
      const auto pos = event.find("data: ");
      if (pos != std::string::npos) frames.push_back(json::parse(event.substr(pos + 6)));
    }
    return frames.size() < 15;
  });
  post("/sessions/" + id + "/pause", json::object(), 200);
  ASSERT_GE(frames.size(), 15u);
  for (std::size_t i = 1; i < frames.size(); ++i) {
    EXPECT_EQ(frames[i]["tick"].get<std::uint64_t>(), frames[i - 1]["tick"].get<std::uint64_t>() + 1);
  }
}

TEST_F(HttpTest, StreamResumesAfterTick) {
  const std::string id = post("/sessions", json::object(), 201)["session_id"];
  post("/sessions/" + id + "/step", {{"n", 5}}, 200);
  std::vector<std::uint64_t> ticks;
  std::string buffer;
  client_->Get("/sessions/" + id + "/stream?after=2", [&](const char* data, std::size_t len) {
    buffer.append(data, len);
    std::size_t pos;
    while ((pos = buffer.find("id: ")) != std::string::npos) {
      const auto nl = buffer.find('\n', pos);
      if (nl == std::string::npos) break;
      ticks.push_back(std::stoull(buffer.substr(pos + 4, nl - pos - 4)));
      buffer.erase(0, nl);
    }
    return ticks.size() < 3;
  });
  EXPECT_EQ(ticks, (std::vector<std::uint64_t>{3, 4, 5}));
}

TEST_F(HttpTest, ReplayRecreatesSession) {
  const std::string id = post("/sessions", {{"seed", 12}}, 201)["session_id"];
  post("/sessions/" + id + "/step", {{"n", 2}}, 200);
  patch("/sessions/" + id + "/params", {{"algorithm", "aggressive"}}, 200);
  const auto original = post("/sessions/" + id + "/step", {{"n", 10}}, 200);
  const auto replay = get("/sessions/" + id + "/replay");
  const std::string copy = post("/sessions", replay, 201)["session_id"];
  EXPECT_EQ(post("/sessions/" + copy + "/step", {{"n", 12}}, 200), original);
}

}  // namespace
}  // namespace viewadapt::service
