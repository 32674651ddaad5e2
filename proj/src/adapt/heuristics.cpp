#include "viewadapt/adapt/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "viewadapt/adapt/oracle.hpp"
#include "viewadapt/errors.hpp"

namespace viewadapt::adapt {

namespace {

// Shared tie-break: larger bandwidth first, then site, then camera.
bool tie_break_less(const StreamDescriptor& a, const StreamDescriptor& b) {
  if (a.full_bandwidth != b.full_bandwidth) return a.full_bandwidth > b.full_bandwidth;
  if (a.site_id != b.site_id) return a.site_id < b.site_id;
  return a.camera_id < b.camera_id;
}

template <typename PriorityLess>
std::vector<std::size_t> sorted_order(std::span<const StreamDescriptor> streams,
                                      OpCounter* ops, PriorityLess priority_less) {
  std::vector<std::size_t> order(streams.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::uint64_t comparisons = 0;
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    ++comparisons;
    const auto& a = streams[i];
    const auto& b = streams[j];
    if (a.global_priority != b.global_priority) {
      return priority_less(a.global_priority, b.global_priority);
    }
    return tie_break_less(a, b);
  });
  if (ops) ops->comparisons += comparisons;
  return order;
}

struct Prepared {
  double full_total = 0.0;
  double min_budget = 0.0;
};

Prepared prepare(std::span<const StreamDescriptor> streams,
                 const ReductionLadder& ladder, double budget) {
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw InvalidArgument("budget must be a finite nonnegative number");
  }
  validate_streams(streams);
  Prepared p;
  p.full_total = total_full_bandwidth(streams);
  p.min_budget = p.full_total * ladder.floor();
  if (!budget_feasible(budget, p.min_budget)) {
    throw InfeasibleBudget(budget, p.min_budget);
  }
  return p;
}

double slack_for(double budget) {
  return kRelTolerance * std::max(1.0, std::abs(budget));
}

}  // namespace

std::vector<std::size_t> order_by_priority_descending(
    std::span<const StreamDescriptor> streams, OpCounter* ops) {
  return sorted_order(streams, ops, std::greater<double>{});
}

std::vector<std::size_t> order_by_priority_ascending(
    std::span<const StreamDescriptor> streams, OpCounter* ops) {
  return sorted_order(streams, ops, std::less<double>{});
}

AdaptationPlan compromise(std::span<const StreamDescriptor> streams,
                          const ReductionLadder& ladder, double budget,
                          OpCounter* ops) {
  const Prepared prep = prepare(streams, ladder, budget);
  const auto order = order_by_priority_descending(streams, ops);
  const auto& factors = ladder.factors();
  const double r_max = ladder.floor();
  const double slack = slack_for(budget);

  // Every stream starts at R_max; surplus is what is left to buy rungs back.
  // surplus stays >= -slack, so the overshoot over the whole pass is bounded
  // by one slack rather than n of them.
  double surplus = budget - prep.min_budget;
  std::vector<std::size_t> rungs(streams.size(), ladder.floor_rung());
  for (std::size_t idx : order) {
    const double s = streams[idx].full_bandwidth;
    for (std::size_t rung = 0; rung < factors.size(); ++rung) {
      if (ops) ++ops->steps;
      const double increment = s * (factors[rung] - r_max);
      if (increment <= surplus + slack) {
        rungs[idx] = rung;
        surplus -= increment;
        break;
      }
    }
  }
  return make_plan(streams, ladder, rungs, budget, Algorithm::kCompromise);
}

AdaptationPlan round_robin(std::span<const StreamDescriptor> streams,
                           const ReductionLadder& ladder, double budget) {
  const Prepared prep = prepare(streams, ladder, budget);
  const auto order = order_by_priority_ascending(streams);
  const auto& factors = ladder.factors();
  const std::size_t floor = ladder.floor_rung();

  std::vector<std::size_t> rungs(streams.size(), 0);
  double total = prep.full_total;
  bool progressed = true;
  while (!within_budget(total, budget) && progressed) {
    progressed = false;
    for (std::size_t idx : order) {
      if (rungs[idx] == floor) continue;
      const double s = streams[idx].full_bandwidth;
      total -= s * (factors[rungs[idx]] - factors[rungs[idx] + 1]);
      ++rungs[idx];
      progressed = true;
      if (within_budget(total, budget)) break;
    }
  }
  return make_plan(streams, ladder, rungs, budget, Algorithm::kRoundRobin);
}

AdaptationPlan aggressive(std::span<const StreamDescriptor> streams,
                          const ReductionLadder& ladder, double budget) {
  const Prepared prep = prepare(streams, ladder, budget);
  const auto order = order_by_priority_ascending(streams);
  const double r_max = ladder.floor();

  std::vector<std::size_t> rungs(streams.size(), 0);
  double total = prep.full_total;
  for (std::size_t idx : order) {
    if (within_budget(total, budget)) break;
    total -= streams[idx].full_bandwidth * (1.0 - r_max);
    rungs[idx] = ladder.floor_rung();
  }
  return make_plan(streams, ladder, rungs, budget, Algorithm::kAggressive);
}

AdaptationPlan adapt(Algorithm algorithm, std::span<const StreamDescriptor> streams,
                     const ReductionLadder& ladder, double budget) {
  switch (algorithm) {
    case Algorithm::kCompromise: return compromise(streams, ladder, budget);
    case Algorithm::kRoundRobin: return round_robin(streams, ladder, budget);
    case Algorithm::kAggressive: return aggressive(streams, ladder, budget);
    case Algorithm::kExact: return exact_oracle(streams, ladder, budget);
  }
  throw InvalidArgument("unknown algorithm");
}

}  // namespace viewadapt::adapt
