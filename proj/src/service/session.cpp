#include "viewadapt/service/session.hpp"

#include <cmath>

#include "viewadapt/adapt/heuristics.hpp"
#include "viewadapt/adapt/ladder.hpp"
#include "viewadapt/errors.hpp"
#include "viewadapt/experiments/metrics.hpp"
#include "viewadapt/service/wire.hpp"
#include "viewadapt/sim/random.hpp"

namespace viewadapt::service {

namespace {

constexpr int kMaxParticipants = 10'000;
constexpr int kMaxCameras = 1'000;

}  // namespace

void validate(const SessionConfig& c) {
  std::vector<std::string> bad;
  try {
    sim::validate(c.scene);
  } catch (const ValidationError& e) {
    bad = e.fields();
  }
  if (c.scene.participants > kMaxParticipants) bad.emplace_back("participants");
  if (c.scene.cameras_per_site > kMaxCameras) bad.emplace_back("cameras_per_site");
  try {
    sim::validate(c.mobility);
  } catch (const InvalidArgument&) {
    bad.emplace_back("mobility");
  }
  try {
    adapt::build_ladder(c.ladder_base, c.ladder_depth);
  } catch (const InvalidArgument&) {
    bad.emplace_back("ladder");
  }
  try {
    view::validate(c.triple);
  } catch (const InvalidArgument&) {
    bad.emplace_back("triple");
  }
  if (c.algorithm == adapt::Algorithm::kExact) bad.emplace_back("algorithm");
  if (!(c.budget.value >= 0.0) || !std::isfinite(c.budget.value)) {
    bad.emplace_back(c.budget.mode == BudgetSpec::Mode::kFraction ? "budget_fraction"
                                                                  : "budget_mbps");
  }
  if (!(c.tick_rate >= 1.0 && c.tick_rate <= 60.0)) bad.emplace_back("tick_rate");
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

sim::Room build_room(const SessionConfig& config, std::uint64_t epoch) {
  const std::uint64_t seed = epoch == 0 ? config.seed : sim::derive_seed(config.seed, epoch);
  return sim::generate_room(config.scene, seed);
}

FrameState compute_frame(const sim::Room& room, const SessionConfig& config,
                         std::uint64_t params_version) {
  FrameState frame;
  frame.tick = room.tick;
  frame.params_version = params_version;
  frame.algorithm = config.algorithm;
  frame.viewer = room.viewer;

  const auto levels = view::classify_participants(room.viewer, room.participants);
  for (std::size_t i = 0; i < room.participants.size(); ++i) {
    const auto& p = room.participants[i];
    frame.participants.push_back({p.id, p.position, p.heading, levels[i],
                                  i < room.groups.size() ? room.groups[i] : -1});
  }

  const auto streams = view::classify_scene(room.viewer, room.participants, config.triple);
  const auto ladder = adapt::build_ladder(config.ladder_base, config.ladder_depth);
  auto& totals = frame.totals;
  totals.full_bandwidth = adapt::total_full_bandwidth(streams);
  totals.budget = config.budget.resolve(totals.full_bandwidth);
  totals.minimum_budget = totals.full_bandwidth * ladder.floor();

  for (const auto& s : streams) {
    frame.streams.push_back({s.site_id, s.camera_id, s.priority_class, s.global_priority,
                             s.full_bandwidth, std::nullopt, std::nullopt});
    totals.quality_before += s.global_priority * s.full_bandwidth;
  }

  try {
    const auto plan = adapt::adapt(config.algorithm, streams, ladder, totals.budget);
    for (std::size_t i = 0; i < plan.streams.size(); ++i) {
      frame.streams[i].adapted_bandwidth = plan.streams[i].adapted_bandwidth;
      frame.streams[i].factor = plan.streams[i].factor;
    }
    totals.total_bandwidth = plan.total_bandwidth;
    totals.total_quality = plan.total_quality;
    const auto breakdown = experiments::class_breakdown(plan);
    totals.adaptation_ratio = breakdown[0].ratio();
    for (PriorityClass c : kAllClasses) {
      totals.class_ratios[class_index(c)] = breakdown[1 + class_index(c)].ratio();
    }
  } catch (const InfeasibleBudget&) {
    totals.feasible = false;
  }
  return frame;
}

Session::Session(std::string id, SessionConfig config, std::vector<AppliedPatch> scheduled)
    : id_(std::move(id)), initial_config_(to_json(config)), config_(std::move(config)) {
  validate(config_);
  for (auto& s : scheduled) {
    if (s.tick == 0 || scheduled_.contains(s.tick)) throw ValidationError({"patches"});
    scheduled_[s.tick] = std::move(s.patch);
  }
  // Replayed patches must hold up in the order they will land.
  SessionConfig probe = config_;
  for (const auto& [tick, patch] : scheduled_) {
    try {
      probe = merge_config(probe, patch, false);
    } catch (const ValidationError&) {
      throw ValidationError({"patches"});
    }
  }
  room_ = build_room(config_, 0);
  history_.push_back(std::make_shared<const FrameState>(compute_frame(room_, config_, 0)));
}

Session::~Session() {
  runner_.request_stop();
  run_cv_.notify_all();
}

std::uint64_t Session::queue_patch(const nlohmann::json& patch) {
  std::lock_guard lock(mu_);
  SessionConfig effective = config_;
  for (const auto& p : pending_) effective = merge_config(effective, p, false);
  merge_config(effective, patch, false);
  pending_.push_back(patch);

  // Walk forward over the slots replay patches already claim.
  std::uint64_t tick = room_.tick;
  std::size_t remaining = pending_.size();
  while (remaining > 0) {
    ++tick;
    if (!scheduled_.contains(tick)) --remaining;
  }
  return tick;
}

void Session::step_locked() {
  const std::uint64_t next_tick = room_.tick + 1;
  std::optional<nlohmann::json> patch;
  if (auto it = scheduled_.find(next_tick); it != scheduled_.end()) {
    patch = std::move(it->second);
    scheduled_.erase(it);
  } else if (!pending_.empty()) {
    patch = std::move(pending_.front());
    pending_.pop_front();
  }

  // A queued patch validated against an earlier config can clash with a
  // replayed one that landed first; such a patch is dropped.
  if (patch) {
    try {
      merge_config(config_, *patch, false);
    } catch (const ValidationError&) {
      patch.reset();
    }
  }

  if (patch) {
    const SessionConfig previous = config_;
    config_ = merge_config(config_, *patch, false);
    if (reshapes_scene(*patch)) {
      const std::uint64_t tick = room_.tick;
      room_ = build_room(config_, ++scene_epoch_);
      room_.tick = tick;
    } else {
      room_.viewer = config_.scene.viewer;
      if (config_.scene.facing != previous.scene.facing &&
          config_.scene.facing == sim::FacingPolicy::kRandom) {
        sim::face(room_, sim::FacingPolicy::kRandom, sim::derive_seed(config_.seed, next_tick));
      }
    }
    ++params_version_;
    applied_.push_back({next_tick, *patch});
  }

  room_ = sim::step_mobility(std::move(room_), config_.mobility, 1);
  if (config_.scene.facing != sim::FacingPolicy::kRandom) {
    sim::face(room_, config_.scene.facing, 0);
  }
  history_.push_back(
      std::make_shared<const FrameState>(compute_frame(room_, config_, params_version_)));
  while (history_.size() > kHistoryLimit) history_.pop_front();
  frames_cv_.notify_all();
}

std::shared_ptr<const FrameState> Session::step(int n) {
  if (n < 0) throw InvalidArgument("step count must be nonnegative");
  std::lock_guard lock(mu_);
  for (int i = 0; i < n; ++i) step_locked();
  return history_.back();
}

std::shared_ptr<const FrameState> Session::frame() const {
  std::lock_guard lock(mu_);
  return history_.back();
}

SessionConfig Session::config() const {
  std::lock_guard lock(mu_);
  return config_;
}

RunState Session::run_state() const {
  std::lock_guard lock(mu_);
  return run_state_;
}

void Session::pause() {
  std::lock_guard lock(mu_);
  run_state_ = RunState::kPaused;
  run_cv_.notify_all();
}

void Session::resume() {
  std::lock_guard lock(mu_);
  run_state_ = RunState::kRunning;
  if (!runner_.joinable()) {
    runner_ = std::jthread([this](std::stop_token stop) { run_loop(stop); });
  }
  run_cv_.notify_all();
}

void Session::run_loop(std::stop_token stop) {
  std::unique_lock lock(mu_);
  while (!stop.stop_requested()) {
    if (run_state_ != RunState::kRunning) {
      run_cv_.wait(lock, stop, [&] { return run_state_ == RunState::kRunning; });
      continue;
    }
    const auto period = std::chrono::duration<double>(1.0 / config_.tick_rate);
    run_cv_.wait_for(lock, stop, std::chrono::duration_cast<std::chrono::nanoseconds>(period),
                     [] { return false; });
    if (stop.stop_requested()) break;
    if (run_state_ == RunState::kRunning) step_locked();
  }
}

std::vector<std::shared_ptr<const FrameState>> Session::wait_frames(
    std::uint64_t after_tick, std::chrono::milliseconds timeout) {
  std::unique_lock lock(mu_);
  frames_cv_.wait_for(lock, timeout, [&] { return history_.back()->tick > after_tick; });
  std::vector<std::shared_ptr<const FrameState>> out;
  for (const auto& f : history_) {
    if (f->tick > after_tick) out.push_back(f);
  }
  return out;
}

nlohmann::json Session::replay() const {
  std::lock_guard lock(mu_);
  nlohmann::json patches = nlohmann::json::array();
  for (const auto& a : applied_) patches.push_back({{"tick", a.tick}, {"patch", a.patch}});
  return {{"config", initial_config_},
          {"seed", initial_config_.at("seed")},
          {"tick", room_.tick},
          {"patches", patches}};
}

std::shared_ptr<Session> SessionManager::create(const nlohmann::json& body) {
  const bool wrapped = body.is_object() && body.contains("config");
  const nlohmann::json& cfg = wrapped ? body.at("config") : body;
  SessionConfig config = merge_config(SessionConfig{}, cfg, true);

  std::vector<AppliedPatch> scheduled;
  if (wrapped && body.contains("patches")) {
    try {
      for (const auto& p : body.at("patches")) {
        scheduled.push_back({p.at("tick").get<std::uint64_t>(), p.at("patch")});
        // Replayed patches must be valid on their own against the base config.
        if (!scheduled.back().patch.is_object()) throw InvalidArgument("patch");
      }
    } catch (const std::exception&) {
      throw ValidationError({"patches"});
    }
  }

  std::lock_guard lock(mu_);
  std::string id = "s" + std::to_string(next_id_++);
  auto session = std::make_shared<Session>(id, std::move(config), std::move(scheduled));
  sessions_.emplace(id, session);
  return session;
}

std::shared_ptr<Session> SessionManager::find(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

bool SessionManager::remove(const std::string& id) {
  std::lock_guard lock(mu_);
  return sessions_.erase(id) > 0;
}

std::vector<std::string> SessionManager::ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

}  // namespace viewadapt::service
