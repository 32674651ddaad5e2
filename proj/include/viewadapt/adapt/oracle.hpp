#pragma once

#include <cstddef>
#include <span>

#include "viewadapt/adapt/ladder.hpp"
#include "viewadapt/adapt/stream.hpp"

namespace viewadapt::adapt {

struct OracleOptions {
  double resolution = 0.01;  // Mbps per DP cell
  std::size_t max_streams = 200;
  std::size_t max_cells = 4'000'000;          // capacity cells of the surplus axis
  std::size_t max_table_entries = 200'000'000;  // streams * cells, choice table
};

// Exact multiple-choice knapsack by dynamic programming over the surplus
// W - W_min. Item weights s * (r - R_max) are rounded up to the resolution, so
// the returned plan is always feasible in exact arithmetic and optimal over
// the discretized instance.
//
// Throws InfeasibleBudget when budget < W_min and InstanceTooLarge when the
// instance exceeds any cap in |options|.
AdaptationPlan exact_oracle(std::span<const StreamDescriptor> streams,
                            const ReductionLadder& ladder, double budget,
                            const OracleOptions& options = {});

}  // namespace viewadapt::adapt
