#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "viewadapt/adapt/stream.hpp"
#include "viewadapt/experiments/metrics.hpp"
#include "viewadapt/sim/scene.hpp"
#include "viewadapt/view/priority.hpp"

namespace viewadapt::experiments {

struct ExperimentConfig {
  int n_sites = 10;
  int cameras_per_site = 10;
  std::vector<double> budget_fractions = {0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<view::PriorityTriple> triples = {{1, 2, 2}, {1, 3, 3}};
  std::vector<int> ladder_depths = {4, 5};
  int trials = 10;
  std::uint64_t seed = 1;

  // Scene and solver knobs with defaults; not part of the sweep grid.
  double ladder_base = 1.4142135623730951;
  std::vector<adapt::Algorithm> algorithms = {
      adapt::Algorithm::kCompromise, adapt::Algorithm::kRoundRobin,
      adapt::Algorithm::kAggressive};
  double room_diameter = 10.0;
  sim::PlacementPolicy placement = sim::PlacementPolicy::kUniform;
  sim::FacingPolicy facing = sim::FacingPolicy::kCentroid;
  double bandwidth_min = 5.0;
  double bandwidth_max = 15.0;
  double main_fov_deg = 60.0;
  double wide_fov_deg = 180.0;
};

// Throws ValidationError listing offending fields.
void validate(const ExperimentConfig& config);

// Scene used for one trial; identical across algorithms, triples, depths and
// fractions so that those axes are compared on the same room.
sim::Room trial_room(const ExperimentConfig& config, int trial);

struct TrialRecord {
  adapt::Algorithm algorithm = adapt::Algorithm::kCompromise;
  std::size_t triple_index = 0;
  int depth = 0;
  double fraction = 0.0;
  int trial = 0;
  bool feasible = true;
  double budget = 0.0;
  double minimum_budget = 0.0;
  double total_bandwidth = 0.0;
  ClassBreakdown classes;
};

std::vector<TrialRecord> collect_trials(const ExperimentConfig& config);

struct MetricRow {
  adapt::Algorithm algorithm;
  view::PriorityTriple triple;
  int depth = 0;
  double fraction = 0.0;
  std::string cls;     // "all", "C11", ...
  std::string metric;  // total_quality | adaptation_ratio | avg_quality_per_stream | infeasible_trials
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for a single sample
  int trials = 0;       // number of samples aggregated
};

struct MetricsReport {
  std::vector<MetricRow> rows;

  // nullptr when absent.
  const MetricRow* find(adapt::Algorithm algorithm, std::size_t triple_index, int depth,
                        double fraction, std::string_view cls, std::string_view metric,
                        const ExperimentConfig& config) const;
};

MetricsReport aggregate(const ExperimentConfig& config, const std::vector<TrialRecord>& trials);

MetricsReport run_sweep(const ExperimentConfig& config);

}  // namespace viewadapt::experiments
