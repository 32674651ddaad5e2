#include "viewadapt/service/wire.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "viewadapt/errors.hpp"

namespace viewadapt::service {

namespace {

using nlohmann::json;

const std::set<std::string>& scene_keys() {
  static const std::set<std::string> keys = {
      "participants", "cameras_per_site", "room_diameter", "placement", "pair_distance",
      "clusters",     "cluster_spread",   "bandwidth_min", "bandwidth_max"};
  return keys;
}

const std::set<std::string>& other_keys() {
  static const std::set<std::string> keys = {
      "seed",   "facing",    "viewer",          "mobility",    "ladder",
      "triple", "algorithm", "budget_fraction", "budget_mbps", "tick_rate"};
  return keys;
}

json optional_number(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

// Reads |key| from |obj| into |apply|; any exception marks |name| bad.
template <typename Apply>
void read(const json& obj, const char* key, const std::string& name,
          std::vector<std::string>& bad, Apply&& apply) {
  if (!obj.contains(key)) return;
  try {
    apply(obj.at(key));
  } catch (const std::exception&) {
    bad.push_back(name);
  }
}

double finite(const json& v) {
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InvalidArgument("non-finite number");
  return d;
}

}  // namespace

json to_json(const SessionConfig& c) {
  json j = {
      {"seed", c.seed},
      {"participants", c.scene.participants},
      {"cameras_per_site", c.scene.cameras_per_site},
      {"room_diameter", c.scene.diameter},
      {"placement", std::string(sim::to_string(c.scene.placement))},
      {"pair_distance", c.scene.pair_distance},
      {"clusters", c.scene.clusters},
      {"cluster_spread", c.scene.cluster_spread},
      {"facing", std::string(sim::to_string(c.scene.facing))},
      {"bandwidth_min", c.scene.bandwidth_min},
      {"bandwidth_max", c.scene.bandwidth_max},
      {"viewer",
       {{"x", c.scene.viewer.position.x},
        {"y", c.scene.viewer.position.y},
        {"heading_deg", rad_to_deg(c.scene.viewer.heading)},
        {"main_fov_deg", rad_to_deg(c.scene.viewer.main_fov)},
        {"wide_fov_deg", rad_to_deg(c.scene.viewer.wide_fov)}}},
      {"mobility",
       {{"p_stay", c.mobility.p_stay},
        {"p_walk", c.mobility.p_walk},
        {"p_turn", c.mobility.p_turn},
        {"step_length", c.mobility.step_length},
        {"turn_step_deg", rad_to_deg(c.mobility.turn_step)},
        {"tick_seconds", c.mobility.tick}}},
      {"ladder", {{"base", c.ladder_base}, {"depth", c.ladder_depth}}},
      {"triple", {c.triple.p0, c.triple.p1, c.triple.p2}},
      {"algorithm", std::string(adapt::to_string(c.algorithm))},
      {"tick_rate", c.tick_rate},
  };
  if (c.budget.mode == BudgetSpec::Mode::kFraction) {
    j["budget_fraction"] = c.budget.value;
  } else {
    j["budget_mbps"] = c.budget.value;
  }
  return j;
}

json to_json(const FrameState& f) {
  json participants = json::array();
  for (const auto& p : f.participants) {
    participants.push_back({{"id", p.id},
                            {"x", p.position.x},
                            {"y", p.position.y},
                            {"heading_deg", rad_to_deg(p.heading)},
                            {"first_level", std::string(view::to_string(p.first_level))},
                            {"group", p.group}});
  }
  json streams = json::array();
  for (const auto& s : f.streams) {
    streams.push_back({{"site_id", s.site_id},
                       {"camera_id", s.camera_id},
                       {"priority_class", std::string(to_string(s.priority_class))},
                       {"global_priority", s.global_priority},
                       {"full_bandwidth", s.full_bandwidth},
                       {"adapted_bandwidth", optional_number(s.adapted_bandwidth)},
                       {"factor", optional_number(s.factor)}});
  }
  json class_ratios = json::object();
  for (PriorityClass c : kAllClasses) {
    class_ratios[std::string(to_string(c))] = optional_number(f.totals.class_ratios[class_index(c)]);
  }
  return {
      {"tick", f.tick},
      {"params_version", f.params_version},
      {"algorithm", std::string(adapt::to_string(f.algorithm))},
      {"viewer",
       {{"x", f.viewer.position.x},
        {"y", f.viewer.position.y},
        {"heading_deg", rad_to_deg(f.viewer.heading)},
        {"main_fov_deg", rad_to_deg(f.viewer.main_fov)},
        {"wide_fov_deg", rad_to_deg(f.viewer.wide_fov)}}},
      {"participants", participants},
      {"streams", streams},
      {"totals",
       {{"full_bandwidth", f.totals.full_bandwidth},
        {"budget", f.totals.budget},
        {"minimum_budget", f.totals.minimum_budget},
        {"total_bandwidth", f.totals.total_bandwidth},
        {"total_quality", f.totals.total_quality},
        {"quality_before", f.totals.quality_before},
        {"adaptation_ratio", optional_number(f.totals.adaptation_ratio)},
        {"class_ratios", class_ratios},
        {"feasible", f.totals.feasible}}},
  };
}

bool reshapes_scene(const json& patch) {
  if (!patch.is_object()) return false;
  for (const auto& [key, _] : patch.items()) {
    if (scene_keys().contains(key)) return true;
  }
  return false;
}

SessionConfig merge_config(const SessionConfig& base, const json& patch, bool allow_seed) {
  if (!patch.is_object()) throw ValidationError({"<root>"});
  SessionConfig c = base;
  std::vector<std::string> bad;
  for (const auto& [key, _] : patch.items()) {
    if (!scene_keys().contains(key) && !other_keys().contains(key)) bad.push_back(key);
  }
  if (!allow_seed && patch.contains("seed")) bad.emplace_back("seed");
  if (patch.contains("budget_fraction") && patch.contains("budget_mbps")) {
    bad.emplace_back("budget_mbps");
  }

  read(patch, "seed", "seed", bad, [&](const json& v) { c.seed = v.get<std::uint64_t>(); });
  read(patch, "participants", "participants", bad,
       [&](const json& v) { c.scene.participants = v.get<int>(); });
  read(patch, "cameras_per_site", "cameras_per_site", bad,
       [&](const json& v) { c.scene.cameras_per_site = v.get<int>(); });
  read(patch, "room_diameter", "room_diameter", bad,
       [&](const json& v) { c.scene.diameter = finite(v); });
  read(patch, "placement", "placement", bad, [&](const json& v) {
    c.scene.placement = sim::parse_placement(v.get<std::string>()).value();
  });
  read(patch, "pair_distance", "pair_distance", bad,
       [&](const json& v) { c.scene.pair_distance = finite(v); });
  read(patch, "clusters", "clusters", bad, [&](const json& v) { c.scene.clusters = v.get<int>(); });
  read(patch, "cluster_spread", "cluster_spread", bad,
       [&](const json& v) { c.scene.cluster_spread = finite(v); });
  read(patch, "facing", "facing", bad, [&](const json& v) {
    c.scene.facing = sim::parse_facing(v.get<std::string>()).value();
  });
  read(patch, "bandwidth_min", "bandwidth_min", bad,
       [&](const json& v) { c.scene.bandwidth_min = finite(v); });
  read(patch, "bandwidth_max", "bandwidth_max", bad,
       [&](const json& v) { c.scene.bandwidth_max = finite(v); });

  if (patch.contains("viewer")) {
    const json& v = patch.at("viewer");
    if (!v.is_object()) {
      bad.emplace_back("viewer");
    } else {
      auto& viewer = c.scene.viewer;
      read(v, "x", "viewer.x", bad, [&](const json& x) { viewer.position.x = finite(x); });
      read(v, "y", "viewer.y", bad, [&](const json& y) { viewer.position.y = finite(y); });
      read(v, "heading_deg", "viewer.heading_deg", bad,
           [&](const json& h) { viewer.heading = wrap_angle(deg_to_rad(finite(h))); });
      read(v, "main_fov_deg", "viewer.main_fov_deg", bad,
           [&](const json& a) { viewer.main_fov = deg_to_rad(finite(a)); });
      read(v, "wide_fov_deg", "viewer.wide_fov_deg", bad,
           [&](const json& a) { viewer.wide_fov = deg_to_rad(finite(a)); });
      for (const auto& [key, _] : v.items()) {
        if (key != "x" && key != "y" && key != "heading_deg" && key != "main_fov_deg" &&
            key != "wide_fov_deg") {
          bad.push_back("viewer." + key);
        }
      }
    }
  }

  if (patch.contains("mobility")) {
    const json& m = patch.at("mobility");
    if (!m.is_object()) {
      bad.emplace_back("mobility");
    } else {
      auto& mob = c.mobility;
      read(m, "p_stay", "mobility.p_stay", bad, [&](const json& x) { mob.p_stay = finite(x); });
      read(m, "p_walk", "mobility.p_walk", bad, [&](const json& x) { mob.p_walk = finite(x); });
      read(m, "p_turn", "mobility.p_turn", bad, [&](const json& x) { mob.p_turn = finite(x); });
      read(m, "step_length", "mobility.step_length", bad,
           [&](const json& x) { mob.step_length = finite(x); });
      read(m, "turn_step_deg", "mobility.turn_step_deg", bad,
           [&](const json& x) { mob.turn_step = deg_to_rad(finite(x)); });
      read(m, "tick_seconds", "mobility.tick_seconds", bad,
           [&](const json& x) { mob.tick = finite(x); });
      for (const auto& [key, _] : m.items()) {
        if (key != "p_stay" && key != "p_walk" && key != "p_turn" && key != "step_length" &&
            key != "turn_step_deg" && key != "tick_seconds") {
          bad.push_back("mobility." + key);
        }
      }
    }
  }

  if (patch.contains("ladder")) {
    const json& l = patch.at("ladder");
    if (!l.is_object()) {
      bad.emplace_back("ladder");
    } else {
      read(l, "base", "ladder.base", bad, [&](const json& x) { c.ladder_base = finite(x); });
      read(l, "depth", "ladder.depth", bad, [&](const json& x) { c.ladder_depth = x.get<int>(); });
    }
  }

  read(patch, "triple", "triple", bad, [&](const json& v) {
    const auto p = v.get<std::vector<double>>();
    if (p.size() != 3) throw InvalidArgument("triple needs three values");
    c.triple = {p[0], p[1], p[2]};
  });
  read(patch, "algorithm", "algorithm", bad, [&](const json& v) {
    c.algorithm = adapt::parse_algorithm(v.get<std::string>()).value();
  });
  read(patch, "budget_fraction", "budget_fraction", bad, [&](const json& v) {
    c.budget = {BudgetSpec::Mode::kFraction, finite(v)};
  });
  read(patch, "budget_mbps", "budget_mbps", bad,
       [&](const json& v) { c.budget = {BudgetSpec::Mode::kMbps, finite(v)}; });
  read(patch, "tick_rate", "tick_rate", bad, [&](const json& v) { c.tick_rate = finite(v); });

  // Fields that failed to parse keep their base value, so the invariant check
  // still reports every other offender.
  try {
    validate(c);
  } catch (const ValidationError& e) {
    bad.insert(bad.end(), e.fields().begin(), e.fields().end());
  }
  if (!bad.empty()) {
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    throw ValidationError(std::move(bad));
  }
  return c;
}

}  // namespace viewadapt::service
