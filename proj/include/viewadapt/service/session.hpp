#pragma once

#include <array>
#include <condition_variable>
#include <cstdint>
#include <chrono>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "viewadapt/adapt/stream.hpp"
#include "viewadapt/sim/mobility.hpp"
#include "viewadapt/sim/room.hpp"
#include "viewadapt/sim/scene.hpp"
#include "viewadapt/view/priority.hpp"

namespace viewadapt::service {

struct BudgetSpec {
  enum class Mode { kFraction, kMbps };
  Mode mode = Mode::kFraction;
  double value = 0.6;  // fraction of S, or absolute Mbps

  double resolve(double full_bandwidth) const {
    return mode == Mode::kFraction ? value * full_bandwidth : value;
  }
  bool operator==(const BudgetSpec&) const = default;
};

struct SessionConfig {
  std::uint64_t seed = 1;
  sim::SceneConfig scene;
  sim::MobilityConfig mobility;
  double ladder_base = 1.4142135623730951;
  int ladder_depth = 4;
  view::PriorityTriple triple{1, 2, 2};
  adapt::Algorithm algorithm = adapt::Algorithm::kCompromise;
  BudgetSpec budget;
  double tick_rate = 10.0;  // Hz, 1..60
};

// Throws ValidationError listing every offending field.
void validate(const SessionConfig& config);

struct ParticipantFrame {
  int id = 0;
  Vec2 position;
  double heading = 0.0;
  view::Level first_level = view::Level::kExcluded;
  int group = -1;
};

struct StreamFrame {
  int site_id = 0;
  int camera_id = 0;
  PriorityClass priority_class = PriorityClass::C11;
  double global_priority = 1.0;
  double full_bandwidth = 0.0;
  // Unset when the budget is infeasible and nothing was adapted.
  std::optional<double> adapted_bandwidth;
  std::optional<double> factor;
};

struct FrameTotals {
  double full_bandwidth = 0.0;  // S
  double budget = 0.0;          // W
  double minimum_budget = 0.0;  // W_min
  double total_bandwidth = 0.0;
  double total_quality = 0.0;
  double quality_before = 0.0;
  std::optional<double> adaptation_ratio;
  std::array<std::optional<double>, 4> class_ratios;  // by class_index
  bool feasible = true;
};

// Immutable snapshot: one classification plus one adaptation of one room.
struct FrameState {
  std::uint64_t tick = 0;
  std::uint64_t params_version = 0;
  adapt::Algorithm algorithm = adapt::Algorithm::kCompromise;
  view::ViewerState viewer;
  std::vector<ParticipantFrame> participants;
  std::vector<StreamFrame> streams;
  FrameTotals totals;
};

// Classify + adapt + metrics for |room| under |config|. Pure; the service
// and offline recomputations share it.
FrameState compute_frame(const sim::Room& room, const SessionConfig& config,
                         std::uint64_t params_version = 0);

// Room for a fresh scene; |epoch| distinguishes regenerations mid-run.
sim::Room build_room(const SessionConfig& config, std::uint64_t epoch = 0);

enum class RunState { kPaused, kRunning };

struct AppliedPatch {
  std::uint64_t tick = 0;  // first frame that reflects the patch
  nlohmann::json patch;
};

// One simulated room. A single writer (the tick loop or step()) advances
// ticks; readers get shared immutable FrameState snapshots. Patches are
// validated on arrival and applied one per tick at tick boundaries.
class Session {
 public:
  Session(std::string id, SessionConfig config, std::vector<AppliedPatch> scheduled = {});
  ~Session();

  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const std::string& id() const { return id_; }

  // Validates against the config as it will be once every queued patch has
  // landed. Returns the tick whose frame will first reflect the patch.
  // Throws ValidationError.
  std::uint64_t queue_patch(const nlohmann::json& patch);

  // Advances |n| ticks; n == 0 returns the current frame unchanged.
  std::shared_ptr<const FrameState> step(int n);

  std::shared_ptr<const FrameState> frame() const;
  SessionConfig config() const;
  RunState run_state() const;

  void pause();
  void resume();

  // Frames with tick > |after_tick| still held in history, oldest first.
  // Blocks up to |timeout| when none are available yet.
  std::vector<std::shared_ptr<const FrameState>> wait_frames(std::uint64_t after_tick,
                                                             std::chrono::milliseconds timeout);

  // Initial config, seed and every applied patch with its tick.
  nlohmann::json replay() const;

  static constexpr std::size_t kHistoryLimit = 4096;

 private:
  void step_locked();
  void run_loop(std::stop_token stop);

  const std::string id_;
  const nlohmann::json initial_config_;

  mutable std::mutex mu_;
  std::condition_variable frames_cv_;
  std::condition_variable_any run_cv_;
  SessionConfig config_;
  sim::Room room_;
  std::uint64_t params_version_ = 0;
  std::uint64_t scene_epoch_ = 0;
  std::deque<nlohmann::json> pending_;
  std::map<std::uint64_t, nlohmann::json> scheduled_;
  std::vector<AppliedPatch> applied_;
  std::deque<std::shared_ptr<const FrameState>> history_;
  RunState run_state_ = RunState::kPaused;
  std::jthread runner_;
};

class SessionManager {
 public:
  // Throws ValidationError. |body| is either a bare config object or
  // {"config": {...}, "patches": [...]} as produced by Session::replay().
  std::shared_ptr<Session> create(const nlohmann::json& body);
  std::shared_ptr<Session> find(const std::string& id) const;
  bool remove(const std::string& id);
  std::vector<std::string> ids() const;

 private:
  mutable std::mutex mu_;
  std::uint64_t next_id_ = 1;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace viewadapt::service
