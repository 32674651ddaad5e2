#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "viewadapt/adapt/ladder.hpp"
#include "viewadapt/priority_class.hpp"

namespace viewadapt::adapt {

// Relative tolerance used for budget comparisons and for the
// adapted_bandwidth == full_bandwidth * factor identity.
inline constexpr double kRelTolerance = 1e-9;

// One camera stream as offered to the receiver.
struct StreamDescriptor {
  int site_id = 0;
  int camera_id = 0;
  double full_bandwidth = 0.0;  // Mbps
  double global_priority = 1.0;
  PriorityClass priority_class = PriorityClass::C11;
  // Carried for the simulator's visibility gating; the solvers ignore them.
  std::optional<double> arrival_time;
  std::optional<double> departure_time;
};

// Throws InvalidArgument on nonpositive bandwidth/priority, duplicated
// (site_id, camera_id), negative ids or arrival after departure.
void validate_streams(std::span<const StreamDescriptor> streams);

double total_full_bandwidth(std::span<const StreamDescriptor> streams);

struct AdaptedStream {
  StreamDescriptor stream;
  std::size_t rung = 0;  // index into ReductionLadder::factors()
  double factor = 1.0;
  double adapted_bandwidth = 0.0;
  double quality = 0.0;
};

enum class Algorithm { kCompromise, kRoundRobin, kAggressive, kExact };

std::string_view to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view s);

struct AdaptationPlan {
  std::vector<AdaptedStream> streams;  // same order as the input
  double total_bandwidth = 0.0;
  double total_quality = 0.0;
  double budget = 0.0;
  double minimum_budget = 0.0;
  Algorithm algorithm = Algorithm::kCompromise;
};

// Builds a plan from per-stream rung choices, recomputing every total from
// scratch so that plans are independent of the solver's accumulation order.
AdaptationPlan make_plan(std::span<const StreamDescriptor> streams,
                         const ReductionLadder& ladder,
                         std::span<const std::size_t> rungs, double budget,
                         Algorithm algorithm);

// W_min = S * R_max. Throws InvalidArgument on an empty stream set.
double minimum_budget(std::span<const StreamDescriptor> streams,
                      const ReductionLadder& ladder);

// True when budget >= W_min up to kRelTolerance.
bool budget_feasible(double budget, double min_budget);

// True when total <= budget up to kRelTolerance.
bool within_budget(double total, double budget);

}  // namespace viewadapt::adapt
