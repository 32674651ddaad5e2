#include "viewadapt/adapt/stream.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_set>

#include "viewadapt/errors.hpp"

namespace viewadapt::adapt {

void validate_streams(std::span<const StreamDescriptor> streams) {
  std::unordered_set<std::uint64_t> seen;
  seen.reserve(streams.size() * 2);
  for (const auto& s : streams) {
    const std::string where =
        "stream (" + std::to_string(s.site_id) + "," + std::to_string(s.camera_id) + ")";
    if (s.site_id < 0 || s.camera_id < 0) {
      throw InvalidArgument(where + ": ids must be nonnegative");
    }
    if (!(s.full_bandwidth > 0.0) || !std::isfinite(s.full_bandwidth)) {
      throw InvalidArgument(where + ": full_bandwidth must be positive");
    }
    if (!(s.global_priority > 0.0) || !std::isfinite(s.global_priority)) {
      throw InvalidArgument(where + ": global_priority must be positive");
    }
    if (s.arrival_time && *s.arrival_time < 0.0) {
      throw InvalidArgument(where + ": arrival_time must be nonnegative");
    }
    if (s.departure_time && *s.departure_time < 0.0) {
      throw InvalidArgument(where + ": departure_time must be nonnegative");
    }
    if (s.arrival_time && s.departure_time && *s.arrival_time > *s.departure_time) {
      throw InvalidArgument(where + ": arrival_time after departure_time");
    }
    const auto key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(s.site_id)) << 32) |
                     static_cast<std::uint32_t>(s.camera_id);
    if (!seen.insert(key).second) {
      throw InvalidArgument(where + ": duplicated (site_id, camera_id)");
    }
  }
}

double total_full_bandwidth(std::span<const StreamDescriptor> streams) {
  double total = 0.0;
  for (const auto& s : streams) total += s.full_bandwidth;
  return total;
}

std::string_view to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kCompromise: return "compromise";
    case Algorithm::kRoundRobin: return "round_robin";
    case Algorithm::kAggressive: return "aggressive";
    case Algorithm::kExact: return "exact";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view s) {
  for (Algorithm a : {Algorithm::kCompromise, Algorithm::kRoundRobin,
                      Algorithm::kAggressive, Algorithm::kExact}) {
    if (to_string(a) == s) return a;
  }
  return std::nullopt;
}

AdaptationPlan make_plan(std::span<const StreamDescriptor> streams,
                         const ReductionLadder& ladder,
                         std::span<const std::size_t> rungs, double budget,
                         Algorithm algorithm) {
  AdaptationPlan plan;
  plan.algorithm = algorithm;
  plan.budget = budget;
  plan.streams.reserve(streams.size());
  double full = 0.0;
  for (std::size_t i = 0; i < streams.size(); ++i) {
    AdaptedStream a;
    a.stream = streams[i];
    a.rung = rungs[i];
    a.factor = ladder.factor(a.rung);
    a.adapted_bandwidth = a.stream.full_bandwidth * a.factor;
    a.quality = a.stream.global_priority * a.adapted_bandwidth;
    full += a.stream.full_bandwidth;
    plan.total_bandwidth += a.adapted_bandwidth;
    plan.total_quality += a.quality;
    plan.streams.push_back(a);
  }
  plan.minimum_budget = full * ladder.floor();
  return plan;
}

double minimum_budget(std::span<const StreamDescriptor> streams,
                      const ReductionLadder& ladder) {
  if (streams.empty()) {
    throw InvalidArgument("minimum_budget requires a nonempty stream set");
  }
  return total_full_bandwidth(streams) * ladder.floor();
}

bool budget_feasible(double budget, double min_budget) {
  return budget >= min_budget - kRelTolerance * std::max(1.0, std::abs(min_budget));
}

bool within_budget(double total, double budget) {
  return total <= budget + kRelTolerance * std::max(1.0, std::abs(budget));
}

}  // namespace viewadapt::adapt
