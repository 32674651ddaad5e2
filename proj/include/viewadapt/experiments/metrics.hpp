#pragma once

#include <array>
#include <optional>

#include "viewadapt/adapt/stream.hpp"
#include "viewadapt/priority_class.hpp"

namespace viewadapt::experiments {

// Sum of priority * adapted bandwidth.
double total_quality(const adapt::AdaptationPlan& plan);

// Quality the same streams would have at full bandwidth.
double quality_before(const adapt::AdaptationPlan& plan);

// after / before. Throws InvalidArgument when before <= 0.
double adaptation_ratio(double before_quality, double after_quality);

struct ClassTotals {
  double before = 0.0;
  double after = 0.0;
  std::size_t streams = 0;

  std::optional<double> ratio() const;
  std::optional<double> quality_per_stream() const;
};

// Index 0 aggregates every stream; 1 + class_index(c) restricts to class c.
using ClassBreakdown = std::array<ClassTotals, 5>;

ClassBreakdown class_breakdown(const adapt::AdaptationPlan& plan);

// max - min of the per-class adaptation ratios over the classes present in
// the plan; 0 when fewer than two classes are present.
double class_ratio_spread(const adapt::AdaptationPlan& plan);
double class_ratio_spread(const ClassBreakdown& breakdown);

}  // namespace viewadapt::experiments
