#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "viewadapt/geometry.hpp"

namespace viewadapt::sim {

// n i.i.d. points, uniform over the disk of |diameter| centered at the origin.
std::vector<Vec2> place_uniform(int n, double diameter, std::uint64_t seed);

// n/2 uniform anchors, each with a partner |pair_distance| away at a random
// bearing. Bearings that leave the room are redrawn a few times before the
// partner is clamped onto the boundary. Throws InvalidArgument for odd n.
// Output order: anchor0, partner0, anchor1, partner1, ...
std::vector<Vec2> place_pairs(int n, double pair_distance, double diameter,
                              std::uint64_t seed);

// K cluster centers uniform over the inner 70% of the disk, members drawn from
// an isotropic normal (sigma = |spread|) around a center chosen round-robin,
// clamped into the room.
std::vector<Vec2> place_clustered(int n, int clusters, double spread, double diameter,
                                  std::uint64_t seed);

enum class PlacementPolicy { kUniform, kPairs, kGmm };

std::string_view to_string(PlacementPolicy p);
std::optional<PlacementPolicy> parse_placement(std::string_view s);

}  // namespace viewadapt::sim
