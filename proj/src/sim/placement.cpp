#include "viewadapt/sim/placement.hpp"

#include <cmath>

#include "viewadapt/errors.hpp"
#include "viewadapt/sim/random.hpp"

namespace viewadapt::sim {

namespace {

Vec2 uniform_in_disk(Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double theta = kTwoPi * rng.uniform();
  return {r * std::cos(theta), r * std::sin(theta)};
}

Vec2 clamp_to_disk(Vec2 p, double radius) {
  const double r = norm(p);
  if (r <= radius) return p;
  return p * (radius * (1.0 - 1e-12) / r);
}

void check_common(int n, double diameter) {
  if (n < 0) throw InvalidArgument("participant count must be nonnegative");
  if (!(diameter > 0.0)) throw InvalidArgument("room diameter must be positive");
}

}  // namespace

std::vector<Vec2> place_uniform(int n, double diameter, std::uint64_t seed) {
  check_common(n, diameter);
  Rng rng(derive_seed(seed, 0x756e69666f726dULL));
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(uniform_in_disk(rng, diameter / 2));
  return out;
}

std::vector<Vec2> place_pairs(int n, double pair_distance, double diameter,
                              std::uint64_t seed) {
  check_common(n, diameter);
  if (n % 2 != 0) throw InvalidArgument("pair placement needs an even participant count");
  if (!(pair_distance >= 0.0)) throw InvalidArgument("pair_distance must be nonnegative");
  Rng rng(derive_seed(seed, 0x7061697273ULL));
  const double radius = diameter / 2;
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n / 2; ++i) {
    const Vec2 anchor = uniform_in_disk(rng, radius);
    Vec2 partner;
    bool placed = false;
    for (int attempt = 0; attempt < 16 && !placed; ++attempt) {
      partner = anchor + unit_from_angle(kTwoPi * rng.uniform()) * pair_distance;
      placed = norm(partner) <= radius;
    }
    out.push_back(anchor);
    out.push_back(clamp_to_disk(partner, radius));
  }
  return out;
}

std::vector<Vec2> place_clustered(int n, int clusters, double spread, double diameter,
                                  std::uint64_t seed) {
  check_common(n, diameter);
  if (clusters < 1) throw InvalidArgument("cluster count must be >= 1");
  if (!(spread >= 0.0)) throw InvalidArgument("cluster spread must be nonnegative");
  Rng rng(derive_seed(seed, 0x636c7573746572ULL));
  const double radius = diameter / 2;
  std::vector<Vec2> centers;
  for (int k = 0; k < clusters; ++k) centers.push_back(uniform_in_disk(rng, 0.7 * radius));
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Vec2 c = centers[static_cast<std::size_t>(i % clusters)];
    const double dx = rng.normal() * spread;
    const double dy = rng.normal() * spread;
    out.push_back(clamp_to_disk(c + Vec2{dx, dy}, radius));
  }
  return out;
}

std::string_view to_string(PlacementPolicy p) {
  switch (p) {
    case PlacementPolicy::kUniform: return "uniform";
    case PlacementPolicy::kPairs: return "pairs";
    case PlacementPolicy::kGmm: return "gmm";
  }
  return "?";
}

std::optional<PlacementPolicy> parse_placement(std::string_view s) {
  for (auto p : {PlacementPolicy::kUniform, PlacementPolicy::kPairs, PlacementPolicy::kGmm}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

}  // namespace viewadapt::sim
