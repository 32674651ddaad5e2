#include "viewadapt/experiments/bench.hpp"

#include <chrono>
#include <cmath>

#include "viewadapt/adapt/heuristics.hpp"
#include "viewadapt/adapt/ladder.hpp"
#include "viewadapt/errors.hpp"
#include "viewadapt/sim/random.hpp"
#include "viewadapt/view/priority.hpp"

namespace viewadapt::experiments {

std::vector<adapt::StreamDescriptor> synthetic_streams(BenchSize size, std::uint64_t seed) {
  if (size.sites < 0 || size.cameras < 0) {
    throw InvalidArgument("bench sizes must be nonnegative");
  }
  const view::PriorityTriple triple{1, 2, 2};
  sim::Rng rng(sim::derive_seed(seed, static_cast<std::uint64_t>(size.sites) * 100003u +
                                          static_cast<std::uint64_t>(size.cameras)));
  std::vector<adapt::StreamDescriptor> streams;
  streams.reserve(static_cast<std::size_t>(size.sites) * static_cast<std::size_t>(size.cameras));
  for (int site = 0; site < size.sites; ++site) {
    const auto first = rng.coin() ? view::Level::kMain : view::Level::kWide;
    for (int cam = 0; cam < size.cameras; ++cam) {
      const auto second = rng.coin() ? view::Level::kMain : view::Level::kWide;
      const auto gp = view::global_priority(first, second, triple);
      adapt::StreamDescriptor s;
      s.site_id = site;
      s.camera_id = cam;
      s.full_bandwidth = rng.uniform(5.0, 15.0);
      s.global_priority = gp.priority;
      s.priority_class = gp.priority_class;
      streams.push_back(s);
    }
  }
  return streams;
}

std::vector<BenchRow> run_scaling_bench(std::span<const BenchSize> sizes, std::uint64_t seed) {
  if (sizes.empty()) throw InvalidArgument("bench needs at least one size");
  const auto ladder = adapt::build_ladder(std::sqrt(2.0), 4);
  std::vector<BenchRow> rows;
  for (const BenchSize& size : sizes) {
    const auto streams = synthetic_streams(size, seed);
    const double budget = 0.5 * adapt::total_full_bandwidth(streams);
    adapt::OpCounter ops;
    const auto start = std::chrono::steady_clock::now();
    const auto plan = adapt::compromise(streams, ladder, budget, &ops);
    const auto stop = std::chrono::steady_clock::now();
    BenchRow row;
    row.size = size;
    row.streams = streams.size();
    row.wall_seconds = std::chrono::duration<double>(stop - start).count();
    row.op_count = ops.total();
    row.total_quality = plan.total_quality;
    rows.push_back(row);
  }
  return rows;
}

NlogNFit fit_nlogn(std::span<const BenchRow> rows) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& r : rows) {
    const double n = static_cast<double>(r.streams);
    x.push_back(n > 1 ? n * std::log2(n) : 0.0);
    y.push_back(static_cast<double>(r.op_count));
  }
  double sxy = 0.0;
  double sxx = 0.0;
  double ybar = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += x[i] * y[i];
    sxx += x[i] * x[i];
    ybar += y[i];
  }
  NlogNFit fit;
  if (x.empty() || sxx == 0.0) return fit;
  ybar /= static_cast<double>(y.size());
  fit.coefficient = sxy / sxx;
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - fit.coefficient * x[i];
    ss_res += e * e;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace viewadapt::experiments
