#pragma once

#include <cstdint>
#include <vector>

#include "viewadapt/geometry.hpp"
#include "viewadapt/view/priority.hpp"

namespace viewadapt::sim {

// Circular shared virtual room centered on the origin.
struct Room {
  double diameter = 10.0;  // meters
  std::vector<view::Participant> participants;
  view::ViewerState viewer;
  std::uint64_t rng_seed = 0;
  std::uint64_t tick = 0;
  // Cluster label per participant (GMM placement); empty when unclustered.
  std::vector<int> groups;

  double radius() const { return diameter / 2; }
};

// True when |p| <= radius (with a 1e-9 m allowance for rounding).
bool inside(const Room& room, Vec2 p);

// Throws InvalidArgument if the diameter is not positive or any participant
// or the viewer lies outside the disk.
void validate(const Room& room);

}  // namespace viewadapt::sim
