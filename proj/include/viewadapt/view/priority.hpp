#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "viewadapt/adapt/stream.hpp"
#include "viewadapt/geometry.hpp"
#include "viewadapt/priority_class.hpp"

namespace viewadapt::view {

struct ViewerState {
  Vec2 position;
  double heading = 0.0;       // radians, [0, 2*pi)
  double main_fov = kPi / 3;  // full angle, radians
  double wide_fov = kPi;
};

// Throws InvalidArgument unless 0 < main_fov <= wide_fov <= 2*pi.
void validate(const ViewerState& viewer);

// A camera on a ring around its participant, optical axis pointing at the
// participant. ring_angle is measured from the participant's heading, so the
// whole rig turns with the participant in the shared room.
struct CameraMount {
  int camera_id = 0;
  double ring_angle = 0.0;
  double full_bandwidth = 10.0;  // Mbps
};

struct Participant {
  int id = 0;
  Vec2 position;
  double heading = 0.0;
  std::vector<CameraMount> cameras;
  // Optional presence window; outside it the participant contributes nothing.
  std::optional<double> arrival_time;
  std::optional<double> departure_time;
};

// Throws InvalidArgument on duplicated or out-of-range ring angles.
void validate(const Participant& participant);

// Cameras evenly spaced on the ring, starting at |offset|.
std::vector<CameraMount> make_camera_ring(int count, double offset, double full_bandwidth);

struct PriorityTriple {
  double p0 = 1.0;  // low level (both tiers)
  double p1 = 2.0;  // first-level high
  double p2 = 2.0;  // second-level high
};

// Throws InvalidArgument unless p0 == 1, p1 >= p0 and p2 >= p0.
void validate(const PriorityTriple& triple);

enum class Level { kMain, kWide, kExcluded };

std::string_view to_string(Level level);

// Angular coverage used for the camera tier: a main and a wide cone, both
// bisected by the participant normal.
struct CameraCoverage {
  double main_angle = kPi / 3;
  double wide_angle = kPi;
};

// Classifies an off-axis angle against a main/wide pair of full cone angles.
// Both boundaries are inclusive.
Level level_for_angle(double off_axis, double main_angle, double wide_angle);

// Throws InvalidArgument when viewer and participant coincide.
Level first_level(const ViewerState& viewer, const Participant& participant);

// Unit vector from the participant toward the viewer.
// Throws InvalidArgument when viewer and participant coincide.
Vec2 participant_normal(const ViewerState& viewer, const Participant& participant);

// World-frame direction from the participant center to the camera.
Vec2 camera_direction(const Participant& participant, const CameraMount& camera);

Level second_level(Vec2 normal, const CameraMount& camera, const Participant& participant,
                   const CameraCoverage& coverage = {});

struct GlobalPriority {
  PriorityClass priority_class = PriorityClass::C11;
  double priority = 1.0;
};

// Product of the two tier weights. Throws InvalidArgument on kExcluded.
GlobalPriority global_priority(Level first, Level second, const PriorityTriple& triple);

struct ClassifyOptions {
  CameraCoverage coverage;
  // When set, participants outside their presence window are skipped.
  std::optional<double> time;
};

// First-level verdict for every participant (kExcluded for coincident or
// absent ones), index-aligned with |participants|.
std::vector<Level> classify_participants(const ViewerState& viewer,
                                         std::span<const Participant> participants,
                                         const ClassifyOptions& options = {});

// Emits one StreamDescriptor for every visible camera of every visible
// participant; excluded streams are omitted.
std::vector<adapt::StreamDescriptor> classify_scene(const ViewerState& viewer,
                                                    std::span<const Participant> participants,
                                                    const PriorityTriple& triple,
                                                    const ClassifyOptions& options = {});

}  // namespace viewadapt::view
