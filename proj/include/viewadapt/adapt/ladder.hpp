#pragma once

#include <cstddef>
#include <vector>

namespace viewadapt::adapt {

// Allowed FPS scaling factors 1/ceil(base^j) for j = 0..depth, deduplicated
// and sorted descending. factors().front() == 1, factors().back() == R_max.
class ReductionLadder {
 public:
  // Throws InvalidArgument unless base > 1 and depth >= 1.
  static ReductionLadder build(double base, int depth);

  double base() const { return base_; }
  int depth() const { return depth_; }
  const std::vector<double>& factors() const { return factors_; }
  // Integer frame-rate divisors, parallel to factors().
  const std::vector<long long>& divisors() const { return divisors_; }

  std::size_t size() const { return factors_.size(); }
  std::size_t floor_rung() const { return factors_.size() - 1; }
  double floor() const { return factors_.back(); }
  double factor(std::size_t rung) const { return factors_.at(rung); }

  bool contains(double factor) const;

 private:
  ReductionLadder() = default;

  double base_ = 2.0;
  int depth_ = 1;
  std::vector<double> factors_;
  std::vector<long long> divisors_;
};

inline ReductionLadder build_ladder(double base, int depth) {
  return ReductionLadder::build(base, depth);
}

}  // namespace viewadapt::adapt
