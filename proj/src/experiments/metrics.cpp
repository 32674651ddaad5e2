#include "viewadapt/experiments/metrics.hpp"

#include <algorithm>
#include <limits>

#include "viewadapt/errors.hpp"

namespace viewadapt::experiments {

double total_quality(const adapt::AdaptationPlan& plan) {
  double q = 0.0;
  for (const auto& s : plan.streams) q += s.stream.global_priority * s.adapted_bandwidth;
  return q;
}

double quality_before(const adapt::AdaptationPlan& plan) {
  double q = 0.0;
  for (const auto& s : plan.streams) q += s.stream.global_priority * s.stream.full_bandwidth;
  return q;
}

double adaptation_ratio(double before_quality, double after_quality) {
  if (!(before_quality > 0.0)) {
    throw InvalidArgument("adaptation ratio needs a positive quality before adaptation");
  }
  return after_quality / before_quality;
}

std::optional<double> ClassTotals::ratio() const {
  if (streams == 0 || !(before > 0.0)) return std::nullopt;
  return after / before;
}

std::optional<double> ClassTotals::quality_per_stream() const {
  if (streams == 0) return std::nullopt;
  return after / static_cast<double>(streams);
}

ClassBreakdown class_breakdown(const adapt::AdaptationPlan& plan) {
  ClassBreakdown out{};
  for (const auto& s : plan.streams) {
    const double before = s.stream.global_priority * s.stream.full_bandwidth;
    const double after = s.stream.global_priority * s.adapted_bandwidth;
    for (std::size_t slot : {std::size_t{0}, 1 + class_index(s.stream.priority_class)}) {
      out[slot].before += before;
      out[slot].after += after;
      ++out[slot].streams;
    }
  }
  return out;
}

double class_ratio_spread(const ClassBreakdown& breakdown) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  int present = 0;
  for (std::size_t slot = 1; slot < breakdown.size(); ++slot) {
    if (auto r = breakdown[slot].ratio()) {
      lo = std::min(lo, *r);
      hi = std::max(hi, *r);
      ++present;
    }
  }
  return present >= 2 ? hi - lo : 0.0;
}

double class_ratio_spread(const adapt::AdaptationPlan& plan) {
  return class_ratio_spread(class_breakdown(plan));
}

}  // namespace viewadapt::experiments
