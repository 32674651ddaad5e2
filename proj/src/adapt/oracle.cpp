#include "viewadapt/adapt/oracle.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "viewadapt/errors.hpp"

namespace viewadapt::adapt {

AdaptationPlan exact_oracle(std::span<const StreamDescriptor> streams,
                            const ReductionLadder& ladder, double budget,
                            const OracleOptions& options) {
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw InvalidArgument("budget must be a finite nonnegative number");
  }
  if (!(options.resolution > 0.0)) {
    throw InvalidArgument("oracle resolution must be positive");
  }
  validate_streams(streams);
  const std::size_t n = streams.size();
  if (n > options.max_streams) {
    throw InstanceTooLarge("exact oracle: " + std::to_string(n) + " streams exceeds cap " +
                           std::to_string(options.max_streams));
  }
  const double full_total = total_full_bandwidth(streams);
  const double r_max = ladder.floor();
  const double min_budget = full_total * r_max;
  if (!budget_feasible(budget, min_budget)) {
    throw InfeasibleBudget(budget, min_budget);
  }

  const auto& factors = ladder.factors();
  const std::size_t levels = factors.size();
  if (levels > std::numeric_limits<std::uint8_t>::max()) {
    throw InstanceTooLarge("exact oracle: ladder has more rungs than the choice table encodes");
  }

  // Weight of rung r is the surplus it consumes over R_max, rounded up.
  std::vector<std::size_t> weights(n * levels);
  std::vector<double> values(n * levels);
  double useful_cells = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = streams[i];
    for (std::size_t r = 0; r < levels; ++r) {
      const double cells = s.full_bandwidth * (factors[r] - r_max) / options.resolution;
      weights[i * levels + r] =
          static_cast<std::size_t>(std::max(0.0, std::ceil(cells - 1e-9)));
      values[i * levels + r] = s.global_priority * s.full_bandwidth * factors[r];
    }
    useful_cells += static_cast<double>(weights[i * levels]);
  }

  const double surplus_cells =
      std::floor(std::max(0.0, budget - min_budget) / options.resolution + 1e-9);
  const double capacity_d = std::min(surplus_cells, useful_cells);
  if (capacity_d + 1.0 > static_cast<double>(options.max_cells) ||
      (capacity_d + 1.0) * static_cast<double>(n) >
          static_cast<double>(options.max_table_entries)) {
    throw InstanceTooLarge("exact oracle: DP table of " + std::to_string(n) + " x " +
                           std::to_string(static_cast<long long>(capacity_d) + 1) +
                           " cells exceeds the configured caps");
  }
  const auto capacity = static_cast<std::size_t>(capacity_d);
  const std::size_t width = capacity + 1;

  // best[c]: max quality of the streams seen so far using at most c cells.
  std::vector<double> best(width, 0.0);
  std::vector<double> next(width);
  std::vector<std::uint8_t> choice(n * width);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t* w = &weights[i * levels];
    const double* v = &values[i * levels];
    std::uint8_t* pick = &choice[i * width];
    for (std::size_t c = 0; c < width; ++c) {
      double top = -std::numeric_limits<double>::infinity();
      std::uint8_t arg = 0;
      for (std::size_t r = 0; r < levels; ++r) {
        if (w[r] > c) continue;
        const double cand = best[c - w[r]] + v[r];
        if (cand > top) {
          top = cand;
          arg = static_cast<std::uint8_t>(r);
        }
      }
      next[c] = top;
      pick[c] = arg;
    }
    best.swap(next);
  }

  std::vector<std::size_t> rungs(n);
  std::size_t c = capacity;
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t r = choice[i * width + c];
    rungs[i] = r;
    c -= weights[i * levels + r];
  }
  return make_plan(streams, ladder, rungs, budget, Algorithm::kExact);
}

}  // namespace viewadapt::adapt
