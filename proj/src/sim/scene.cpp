#include "viewadapt/sim/scene.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "viewadapt/errors.hpp"
#include "viewadapt/sim/gmm.hpp"
#include "viewadapt/sim/random.hpp"

namespace viewadapt::sim {

void validate(const SceneConfig& c) {
  std::vector<std::string> bad;
  if (c.participants < 0) bad.emplace_back("participants");
  if (c.cameras_per_site < 0) bad.emplace_back("cameras_per_site");
  if (!(c.diameter > 0.0)) bad.emplace_back("room_diameter");
  if (c.placement == PlacementPolicy::kPairs && c.participants % 2 != 0) {
    bad.emplace_back("placement");
  }
  if (!(c.pair_distance >= 0.0)) bad.emplace_back("pair_distance");
  if (c.clusters < 1) bad.emplace_back("clusters");
  if (!(c.cluster_spread >= 0.0)) bad.emplace_back("cluster_spread");
  if (!(c.bandwidth_min > 0.0) || !(c.bandwidth_max >= c.bandwidth_min)) {
    bad.emplace_back("bandwidth_range");
  }
  try {
    view::validate(c.viewer);
  } catch (const InvalidArgument&) {
    bad.emplace_back("viewer.fov");
  }
  if (norm(c.viewer.position) > c.diameter / 2 + 1e-9) bad.emplace_back("viewer.position");
  if (!bad.empty()) throw ValidationError(std::move(bad));
}

Room generate_room(const SceneConfig& config, std::uint64_t seed) {
  validate(config);
  Room room;
  room.diameter = config.diameter;
  room.rng_seed = seed;
  room.viewer = config.viewer;

  const int n = config.participants;
  const std::uint64_t place_seed = derive_seed(seed, 1);
  std::vector<Vec2> positions;
  switch (config.placement) {
    case PlacementPolicy::kUniform:
      positions = place_uniform(n, config.diameter, place_seed);
      break;
    case PlacementPolicy::kPairs:
      positions = place_pairs(n, config.pair_distance, config.diameter, place_seed);
      break;
    case PlacementPolicy::kGmm:
      positions = place_clustered(n, config.clusters, config.cluster_spread, config.diameter,
                                  place_seed);
      break;
  }

  Rng rng(derive_seed(seed, 2));
  if (config.random_viewer_heading) room.viewer.heading = kTwoPi * rng.uniform();
  for (int i = 0; i < n; ++i) {
    view::Participant p;
    p.id = i;
    p.position = positions[static_cast<std::size_t>(i)];
    p.heading = kTwoPi * rng.uniform();
    p.cameras = view::make_camera_ring(config.cameras_per_site, kTwoPi * rng.uniform(), 0.0);
    for (auto& cam : p.cameras) {
      cam.full_bandwidth = rng.uniform(config.bandwidth_min, config.bandwidth_max);
    }
    room.participants.push_back(std::move(p));
  }

  if (config.placement == PlacementPolicy::kGmm && n > 0) {
    const int k = std::min(config.clusters, n);
    room.groups = gmm_fit(positions, k, derive_seed(seed, 3)).labels();
  } else if (config.placement == PlacementPolicy::kPairs) {
    for (int i = 0; i < n; ++i) room.groups.push_back(i / 2);
  }
  face(room, config.facing, derive_seed(seed, 4));
  return room;
}

void face(Room& room, FacingPolicy policy, std::uint64_t seed) {
  const auto headings = apply_facing(room.participants, policy, seed, room.groups);
  for (std::size_t i = 0; i < headings.size(); ++i) room.participants[i].heading = headings[i];
}

}  // namespace viewadapt::sim
