#pragma once

#include <cstdint>

#include "viewadapt/sim/mobility.hpp"
#include "viewadapt/sim/placement.hpp"
#include "viewadapt/sim/room.hpp"

namespace viewadapt::sim {

struct SceneConfig {
  int participants = 10;
  int cameras_per_site = 10;
  double diameter = 10.0;
  PlacementPolicy placement = PlacementPolicy::kUniform;
  double pair_distance = 1.0;
  int clusters = 3;
  double cluster_spread = 1.0;
  FacingPolicy facing = FacingPolicy::kCentroid;
  double bandwidth_min = 5.0;   // Mbps, per camera
  double bandwidth_max = 15.0;
  view::ViewerState viewer;
  bool random_viewer_heading = false;
};

// Throws ValidationError listing every offending field.
void validate(const SceneConfig& config);

// Places participants, mounts their camera rings with random offsets and
// bandwidths, labels GMM clusters when requested and applies the facing
// policy. Participant ids are 0..n-1; everything derives from |seed|.
Room generate_room(const SceneConfig& config, std::uint64_t seed);

// Re-applies |policy| to the room's participants (using its cluster labels).
void face(Room& room, FacingPolicy policy, std::uint64_t seed);

}  // namespace viewadapt::sim
