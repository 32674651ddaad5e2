#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "viewadapt/adapt/ladder.hpp"
#include "viewadapt/adapt/stream.hpp"

namespace viewadapt::adapt {

// Instrumentation for the complexity checks: comparator calls made by the
// priority sort plus per-stream work in the allocation pass.
struct OpCounter {
  std::uint64_t comparisons = 0;
  std::uint64_t steps = 0;

  std::uint64_t total() const { return comparisons + steps; }
};

// Deterministic processing orders. Ties on global priority are broken by
// full bandwidth (larger first), then site_id, then camera_id.
std::vector<std::size_t> order_by_priority_descending(
    std::span<const StreamDescriptor> streams, OpCounter* ops = nullptr);
std::vector<std::size_t> order_by_priority_ascending(
    std::span<const StreamDescriptor> streams, OpCounter* ops = nullptr);

// Highest priority first: each stream takes the largest ladder factor whose
// increment over R_max still fits in the unused surplus W - W_min.
AdaptationPlan compromise(std::span<const StreamDescriptor> streams,
                          const ReductionLadder& ladder, double budget,
                          OpCounter* ops = nullptr);

// Lowest priority first, one rung per visit, cycling until the budget is met.
AdaptationPlan round_robin(std::span<const StreamDescriptor> streams,
                           const ReductionLadder& ladder, double budget);

// Lowest priority first; every visited stream is driven all the way to
// R_max before the budget is checked again.
AdaptationPlan aggressive(std::span<const StreamDescriptor> streams,
                          const ReductionLadder& ladder, double budget);

AdaptationPlan adapt(Algorithm algorithm, std::span<const StreamDescriptor> streams,
                     const ReductionLadder& ladder, double budget);

}  // namespace viewadapt::adapt
