#include "viewadapt/sim/gmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "viewadapt/errors.hpp"
#include "viewadapt/sim/random.hpp"

namespace viewadapt::sim {

namespace {

double squared(Vec2 v) { return dot(v, v); }

// Fills |resp| (row-major n x k) from the current means.
void expectation(std::span<const Vec2> positions, std::span<const Vec2> means,
                 std::vector<double>& resp) {
  const std::size_t k = means.size();
  std::vector<double> logp(k);
  for (std::size_t i = 0; i < positions.size(); ++i) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < k; ++j) {
      logp[j] = -0.5 * squared(positions[i] - means[j]);
      top = std::max(top, logp[j]);
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      logp[j] = std::exp(logp[j] - top);
      sum += logp[j];
    }
    for (std::size_t j = 0; j < k; ++j) resp[i * k + j] = logp[j] / sum;
  }
}

}  // namespace

std::vector<int> GmmState::labels() const {
  const std::size_t n = k > 0 ? responsibilities.size() / static_cast<std::size_t>(k) : 0;
  std::vector<int> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double best = -1.0;
    for (int j = 0; j < k; ++j) {
      const double r = responsibility(i, static_cast<std::size_t>(j));
      if (r > best) {
        best = r;
        out[i] = j;
      }
    }
  }
  return out;
}

double gmm_log_likelihood(std::span<const Vec2> positions, std::span<const Vec2> means) {
  // log( (1/K) sum_j exp(-d^2/2) / (2 pi) ), stabilized by the largest term.
  const double k = static_cast<double>(means.size());
  const double log_norm = -std::log(kTwoPi) - std::log(k);
  double total = 0.0;
  for (const Vec2& x : positions) {
    double top = -std::numeric_limits<double>::infinity();
    for (const Vec2& m : means) top = std::max(top, -0.5 * squared(x - m));
    double sum = 0.0;
    for (const Vec2& m : means) sum += std::exp(-0.5 * squared(x - m) - top);
    total += top + std::log(sum) + log_norm;
  }
  return total;
}

GmmState gmm_fit(std::span<const Vec2> positions, int k, std::uint64_t seed,
                 const GmmOptions& options, const GmmObserver& observer) {
  if (k < 1) throw InvalidArgument("GMM needs K >= 1");
  if (static_cast<std::size_t>(k) > positions.size()) {
    throw InvalidArgument("GMM needs at least K positions");
  }
  if (options.max_iters < 0 || !(options.epsilon >= 0.0)) {
    throw InvalidArgument("GMM options must be nonnegative");
  }
  const std::size_t n = positions.size();
  const auto kk = static_cast<std::size_t>(k);

  GmmState state;
  state.k = k;
  state.responsibilities.assign(n * kk, 0.0);

  // K distinct seeds by a partial Fisher-Yates shuffle of the indices.
  Rng rng(derive_seed(seed, 0x676d6dULL));
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t j = 0; j < kk; ++j) {
    const std::size_t pick = j + static_cast<std::size_t>(rng.below(n - j));
    std::swap(idx[j], idx[pick]);
    state.means.push_back(positions[idx[j]]);
  }
  state.log_likelihood.push_back(gmm_log_likelihood(positions, state.means));

  std::vector<Vec2> sums(kk);
  std::vector<double> weights(kk);
  for (int iter = 0; iter < options.max_iters; ++iter) {
    expectation(positions, state.means, state.responsibilities);
    if (observer) observer(iter, state.responsibilities);

    std::fill(sums.begin(), sums.end(), Vec2{});
    std::fill(weights.begin(), weights.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < kk; ++j) {
        const double r = state.responsibilities[i * kk + j];
        sums[j] = sums[j] + positions[i] * r;
        weights[j] += r;
      }
    }
    double moved = 0.0;
    for (std::size_t j = 0; j < kk; ++j) {
      if (weights[j] <= 0.0) continue;  // component lost all mass; keep it put
      const Vec2 updated = sums[j] * (1.0 / weights[j]);
      moved = std::max(moved, distance(updated, state.means[j]));
      state.means[j] = updated;
    }
    state.iterations = iter + 1;
    state.log_likelihood.push_back(gmm_log_likelihood(positions, state.means));
    if (moved < options.epsilon) {
      state.converged = true;
      break;
    }
  }
  // Leave responsibilities consistent with the final means.
  expectation(positions, state.means, state.responsibilities);
  return state;
}

}  // namespace viewadapt::sim
