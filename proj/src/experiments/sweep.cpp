#include "viewadapt/experiments/sweep.hpp"

#include <cmath>
#include <map>
#include <tuple>

#include "viewadapt/adapt/heuristics.hpp"
#include "viewadapt/adapt/ladder.hpp"
#include "viewadapt/errors.hpp"
#include "viewadapt/sim/random.hpp"

namespace viewadapt::experiments {

namespace {

struct Accumulator {
  std::vector<double> samples;

  void add(double v) { samples.push_back(v); }

  // Two-pass mean and sample standard deviation, in insertion order.
  std::pair<double, double> stats() const {
    const double n = static_cast<double>(samples.size());
    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= n;
    if (samples.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0))};
  }
};

constexpr std::array<std::string_view, 5> kClassLabels = {"all", "C11", "C12", "C21", "C22"};

sim::SceneConfig scene_for(const ExperimentConfig& c) {
  sim::SceneConfig scene;
  scene.participants = c.n_sites;
  scene.cameras_per_site = c.cameras_per_site;
  scene.diameter = c.room_diameter;
  scene.placement = c.placement;
  scene.facing = c.facing;
  scene.bandwidth_min = c.bandwidth_min;
  scene.bandwidth_max = c.bandwidth_max;
  scene.viewer.main_fov = deg_to_rad(c.main_fov_deg);
  scene.viewer.wide_fov = deg_to_rad(c.wide_fov_deg);
  scene.random_viewer_heading = true;
  return scene;
}

}  // namespace

void validate(const ExperimentConfig& c) {
  std::vector<std::string> bad;
  if (c.n_sites < 0) bad.emplace_back("n_sites");
  if (c.cameras_per_site < 0) bad.emplace_back("cameras_per_site");
  if (c.budget_fractions.empty()) bad.emplace_back("budget_fractions");
  for (double f : c.budget_fractions) {
    if (!(f > 0.0 && f <= 1.0)) {
      bad.emplace_back("budget_fractions");
      break;
    }
  }
  if (c.triples.empty()) bad.emplace_back("triples");
  for (const auto& t : c.triples) {
    try {
      view::validate(t);
    } catch (const InvalidArgument&) {
      bad.emplace_back("triples");
      break;
    }
  }
  if (c.ladder_depths.empty()) bad.emplace_back("ladder_depths");
  for (int d : c.ladder_depths) {
    if (d < 1) {
      bad.emplace_back("ladder_depths");
      break;
    }
  }
  if (!(c.ladder_base > 1.0)) bad.emplace_back("ladder_base");
  if (c.trials < 1) bad.emplace_back("trials");
  if (c.algorithms.empty()) bad.emplace_back("algorithms");
  if (!bad.empty()) throw ValidationError(std::move(bad));
  sim::validate(scene_for(c));
}

sim::Room trial_room(const ExperimentConfig& config, int trial) {
  return sim::generate_room(scene_for(config),
                            sim::derive_seed(config.seed, static_cast<std::uint64_t>(trial)));
}

std::vector<TrialRecord> collect_trials(const ExperimentConfig& config) {
  validate(config);
  std::vector<adapt::ReductionLadder> ladders;
  for (int d : config.ladder_depths) ladders.push_back(adapt::build_ladder(config.ladder_base, d));

  std::vector<TrialRecord> out;
  for (int trial = 0; trial < config.trials; ++trial) {
    const sim::Room room = trial_room(config, trial);
    for (std::size_t ti = 0; ti < config.triples.size(); ++ti) {
      const auto streams = view::classify_scene(room.viewer, room.participants,
                                                config.triples[ti]);
      const double full = adapt::total_full_bandwidth(streams);
      for (std::size_t di = 0; di < ladders.size(); ++di) {
        for (double fraction : config.budget_fractions) {
          for (adapt::Algorithm algo : config.algorithms) {
            TrialRecord rec;
            rec.algorithm = algo;
            rec.triple_index = ti;
            rec.depth = config.ladder_depths[di];
            rec.fraction = fraction;
            rec.trial = trial;
            rec.budget = fraction * full;
            rec.minimum_budget = full * ladders[di].floor();
            try {
              const auto plan = adapt::adapt(algo, streams, ladders[di], rec.budget);
              rec.total_bandwidth = plan.total_bandwidth;
              rec.classes = class_breakdown(plan);
            } catch (const InfeasibleBudget&) {
              rec.feasible = false;
            }
            out.push_back(rec);
          }
        }
      }
    }
  }
  return out;
}

MetricsReport aggregate(const ExperimentConfig& config, const std::vector<TrialRecord>& trials) {
  // Keyed by grid position so that row order follows the config, not the
  // order in which records were produced.
  using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t, int>;
  std::map<Key, Accumulator> cells;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, int> infeasible;

  auto index_of = [](const auto& values, const auto& v) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] == v) return i;
    }
    throw InvalidArgument("trial record does not belong to this configuration");
  };

  for (const auto& rec : trials) {
    const std::size_t a = index_of(config.algorithms, rec.algorithm);
    const std::size_t d = index_of(config.ladder_depths, rec.depth);
    const std::size_t f = index_of(config.budget_fractions, rec.fraction);
    if (!rec.feasible) {
      ++infeasible[{a, rec.triple_index, d, f}];
      continue;
    }
    for (std::size_t slot = 0; slot < rec.classes.size(); ++slot) {
      const auto& ct = rec.classes[slot];
      cells[{a, rec.triple_index, d, f, slot, 0}].add(ct.after);
      if (auto r = ct.ratio()) cells[{a, rec.triple_index, d, f, slot, 1}].add(*r);
      if (auto q = ct.quality_per_stream()) cells[{a, rec.triple_index, d, f, slot, 2}].add(*q);
    }
  }

  static constexpr std::array<std::string_view, 3> kMetrics = {
      "total_quality", "adaptation_ratio", "avg_quality_per_stream"};
  MetricsReport report;
  for (std::size_t a = 0; a < config.algorithms.size(); ++a) {
    for (std::size_t t = 0; t < config.triples.size(); ++t) {
      for (std::size_t d = 0; d < config.ladder_depths.size(); ++d) {
        for (std::size_t f = 0; f < config.budget_fractions.size(); ++f) {
          auto row_base = [&] {
            MetricRow row;
            row.algorithm = config.algorithms[a];
            row.triple = config.triples[t];
            row.depth = config.ladder_depths[d];
            row.fraction = config.budget_fractions[f];
            return row;
          };
          for (std::size_t slot = 0; slot < kClassLabels.size(); ++slot) {
            for (int m = 0; m < 3; ++m) {
              auto it = cells.find({a, t, d, f, slot, m});
              if (it == cells.end() || it->second.samples.empty()) continue;
              MetricRow row = row_base();
              row.cls = kClassLabels[slot];
              row.metric = kMetrics[static_cast<std::size_t>(m)];
              std::tie(row.mean, row.stddev) = it->second.stats();
              row.trials = static_cast<int>(it->second.samples.size());
              report.rows.push_back(std::move(row));
            }
          }
          if (auto it = infeasible.find({a, t, d, f}); it != infeasible.end()) {
            MetricRow row = row_base();
            row.cls = "all";
            row.metric = "infeasible_trials";
            row.mean = it->second;
            row.trials = config.trials;
            report.rows.push_back(std::move(row));
          }
        }
      }
    }
  }
  return report;
}

const MetricRow* MetricsReport::find(adapt::Algorithm algorithm, std::size_t triple_index,
                                     int depth, double fraction, std::string_view cls,
                                     std::string_view metric,
                                     const ExperimentConfig& config) const {
  const auto& triple = config.triples.at(triple_index);
  for (const auto& row : rows) {
    if (row.algorithm == algorithm && row.triple.p1 == triple.p1 &&
        row.triple.p2 == triple.p2 && row.depth == depth && row.fraction == fraction &&
        row.cls == cls && row.metric == metric) {
      return &row;
    }
  }
  return nullptr;
}

MetricsReport run_sweep(const ExperimentConfig& config) {
  return aggregate(config, collect_trials(config));
}

}  // namespace viewadapt::experiments
