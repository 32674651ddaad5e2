#include "viewadapt/adapt/ladder.hpp"

#include <algorithm>
#include <cmath>

#include "viewadapt/errors.hpp"

namespace viewadapt::adapt {

namespace {

// pow() lands a few ulps above exact integers (sqrt(2)^4 = 4.000000000000001),
// which would push ceil() one divisor too far.
long long ceil_divisor(double x) {
  return static_cast<long long>(std::ceil(x - 1e-9 * x));
}

}  // namespace

ReductionLadder ReductionLadder::build(double base, int depth) {
  if (!(base > 1.0) || !std::isfinite(base)) {
    throw InvalidArgument("ladder base must be > 1");
  }
  if (depth < 1) {
    throw InvalidArgument("ladder depth must be >= 1");
  }
  if (depth * std::log(base) > std::log(1e15)) {
    throw InvalidArgument("ladder base^depth overflows the divisor range");
  }

  ReductionLadder ladder;
  ladder.base_ = base;
  ladder.depth_ = depth;
  for (int j = 0; j <= depth; ++j) {
    const long long d = std::max(1LL, ceil_divisor(std::pow(base, j)));
    if (ladder.divisors_.empty() || ladder.divisors_.back() != d) {
      ladder.divisors_.push_back(d);
    }
  }
  // ceil(base^j) is nondecreasing in j, so adjacent dedup is enough.
  for (long long d : ladder.divisors_) {
    ladder.factors_.push_back(1.0 / static_cast<double>(d));
  }
  return ladder;
}

bool ReductionLadder::contains(double factor) const {
  return std::find(factors_.begin(), factors_.end(), factor) != factors_.end();
}

}  // namespace viewadapt::adapt
