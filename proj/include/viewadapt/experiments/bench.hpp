#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "viewadapt/adapt/stream.hpp"

namespace viewadapt::experiments {

struct BenchSize {
  int sites = 0;
  int cameras = 0;
};

struct BenchRow {
  BenchSize size;
  std::size_t streams = 0;
  double wall_seconds = 0.0;
  std::uint64_t op_count = 0;
  double total_quality = 0.0;
};

// Synthetic sites x cameras instance: random class per stream under the
// (1,2,2) triple, bandwidth uniform in [5, 15] Mbps.
std::vector<adapt::StreamDescriptor> synthetic_streams(BenchSize size, std::uint64_t seed);

// Times Compromise at W = 0.5 S on ladder (sqrt 2, 4) for every size.
// Throws InvalidArgument on an empty size list.
std::vector<BenchRow> run_scaling_bench(std::span<const BenchSize> sizes,
                                        std::uint64_t seed = 1);

struct NlogNFit {
  double coefficient = 0.0;  // C in op_count ~ C * n log2 n
  double r_squared = 0.0;
};

// Least-squares fit through the origin of op_count against n log2 n.
NlogNFit fit_nlogn(std::span<const BenchRow> rows);

}  // namespace viewadapt::experiments
