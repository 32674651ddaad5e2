#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "viewadapt/geometry.hpp"

namespace viewadapt::sim {

struct GmmOptions {
  double epsilon = 1e-4;  // stop once no mean moves farther than this (m)
  int max_iters = 200;
};

// Means-only mixture: isotropic unit variance, equal mixing weights.
struct GmmState {
  int k = 1;
  std::vector<Vec2> means;
  // Row-major |positions| x k.
  std::vector<double> responsibilities;
  int iterations = 0;
  bool converged = false;
  // Log-likelihood of the means before the first iteration and after each.
  std::vector<double> log_likelihood;

  double responsibility(std::size_t point, std::size_t component) const {
    return responsibilities[point * static_cast<std::size_t>(k) + component];
  }
  // argmax responsibility per point.
  std::vector<int> labels() const;
};

// Observer invoked after every E-step with the iteration index and the fresh
// responsibilities; used by tests to check per-iteration normalization.
using GmmObserver = std::function<void(int iteration, std::span<const double> responsibilities)>;

// Seeds the means at K distinct randomly chosen positions, then alternates
// E and M steps. Throws InvalidArgument unless 1 <= K <= |positions|.
GmmState gmm_fit(std::span<const Vec2> positions, int k, std::uint64_t seed,
                 const GmmOptions& options = {}, const GmmObserver& observer = {});

double gmm_log_likelihood(std::span<const Vec2> positions, std::span<const Vec2> means);

}  // namespace viewadapt::sim
