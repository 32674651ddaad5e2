#include "viewadapt/view/priority.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "viewadapt/errors.hpp"

namespace viewadapt::view {

namespace {

Vec2 offset_or_throw(const ViewerState& viewer, const Participant& participant) {
  const Vec2 d = participant.position - viewer.position;
  if (d.x == 0.0 && d.y == 0.0) {
    throw InvalidArgument("participant " + std::to_string(participant.id) +
                          " coincides with the viewer");
  }
  return d;
}

bool present_at(const Participant& p, std::optional<double> time) {
  if (!time) return true;
  if (p.arrival_time && *time < *p.arrival_time) return false;
  if (p.departure_time && *time > *p.departure_time) return false;
  return true;
}

PriorityClass class_of(Level first, Level second) {
  const bool hi1 = first == Level::kMain;
  const bool hi2 = second == Level::kMain;
  if (hi1 && hi2) return PriorityClass::C22;
  if (hi1) return PriorityClass::C21;
  if (hi2) return PriorityClass::C12;
  return PriorityClass::C11;
}

}  // namespace

void validate(const ViewerState& viewer) {
  if (!(viewer.main_fov > 0.0 && viewer.main_fov <= viewer.wide_fov &&
        viewer.wide_fov <= kTwoPi)) {
    throw InvalidArgument("viewer FOV must satisfy 0 < main_fov <= wide_fov <= 2*pi");
  }
}

void validate(const Participant& participant) {
  std::vector<double> angles;
  angles.reserve(participant.cameras.size());
  for (const auto& cam : participant.cameras) {
    if (!(cam.ring_angle >= 0.0 && cam.ring_angle < kTwoPi)) {
      throw InvalidArgument("camera ring_angle must lie in [0, 2*pi)");
    }
    angles.push_back(cam.ring_angle);
  }
  std::sort(angles.begin(), angles.end());
  if (std::adjacent_find(angles.begin(), angles.end()) != angles.end()) {
    throw InvalidArgument("participant " + std::to_string(participant.id) +
                          " has cameras sharing a ring angle");
  }
}

std::vector<CameraMount> make_camera_ring(int count, double offset, double full_bandwidth) {
  std::vector<CameraMount> ring;
  ring.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (int c = 0; c < count; ++c) {
    ring.push_back({c, wrap_angle(offset + kTwoPi * c / count), full_bandwidth});
  }
  return ring;
}

void validate(const PriorityTriple& triple) {
  if (triple.p0 != 1.0) throw InvalidArgument("priority triple must have p0 = 1");
  if (!(triple.p1 >= triple.p0) || !(triple.p2 >= triple.p0)) {
    throw InvalidArgument("priority triple must have p1 >= p0 and p2 >= p0");
  }
}

std::string_view to_string(Level level) {
  switch (level) {
    case Level::kMain: return "main";
    case Level::kWide: return "wide";
    case Level::kExcluded: return "excluded";
  }
  return "?";
}

Level level_for_angle(double off_axis, double main_angle, double wide_angle) {
  if (off_axis <= main_angle / 2 + kAngleEpsilon) return Level::kMain;
  if (off_axis <= wide_angle / 2 + kAngleEpsilon) return Level::kWide;
  return Level::kExcluded;
}

Level first_level(const ViewerState& viewer, const Participant& participant) {
  const Vec2 to_participant = offset_or_throw(viewer, participant);
  const double theta = angle_between(unit_from_angle(viewer.heading), to_participant);
  return level_for_angle(theta, viewer.main_fov, viewer.wide_fov);
}

Vec2 participant_normal(const ViewerState& viewer, const Participant& participant) {
  const Vec2 d = offset_or_throw(viewer, participant);
  return d * (-1.0 / norm(d));
}

Vec2 camera_direction(const Participant& participant, const CameraMount& camera) {
  return unit_from_angle(participant.heading + camera.ring_angle);
}

Level second_level(Vec2 normal, const CameraMount& camera, const Participant& participant,
                   const CameraCoverage& coverage) {
  const double phi = angle_between(normal, camera_direction(participant, camera));
  return level_for_angle(phi, coverage.main_angle, coverage.wide_angle);
}

GlobalPriority global_priority(Level first, Level second, const PriorityTriple& triple) {
  if (first == Level::kExcluded || second == Level::kExcluded) {
    throw InvalidArgument("excluded streams have no global priority");
  }
  const double f1 = first == Level::kMain ? triple.p1 : triple.p0;
  const double f2 = second == Level::kMain ? triple.p2 : triple.p0;
  return {class_of(first, second), f1 * f2};
}

std::vector<Level> classify_participants(const ViewerState& viewer,
                                         std::span<const Participant> participants,
                                         const ClassifyOptions& options) {
  std::vector<Level> levels;
  levels.reserve(participants.size());
  for (const auto& p : participants) {
    if (!present_at(p, options.time) || p.position == viewer.position) {
      levels.push_back(Level::kExcluded);
    } else {
      levels.push_back(first_level(viewer, p));
    }
  }
  return levels;
}

std::vector<adapt::StreamDescriptor> classify_scene(const ViewerState& viewer,
                                                    std::span<const Participant> participants,
                                                    const PriorityTriple& triple,
                                                    const ClassifyOptions& options) {
  const auto levels = classify_participants(viewer, participants, options);
  std::vector<adapt::StreamDescriptor> streams;
  for (std::size_t i = 0; i < participants.size(); ++i) {
    if (levels[i] == Level::kExcluded) continue;
    const auto& p = participants[i];
    const Vec2 normal = participant_normal(viewer, p);
    for (const auto& cam : p.cameras) {
      const Level second = second_level(normal, cam, p, options.coverage);
      if (second == Level::kExcluded) continue;
      const auto gp = global_priority(levels[i], second, triple);
      adapt::StreamDescriptor s;
      s.site_id = p.id;
      s.camera_id = cam.camera_id;
      s.full_bandwidth = cam.full_bandwidth;
      s.global_priority = gp.priority;
      s.priority_class = gp.priority_class;
      s.arrival_time = p.arrival_time;
      s.departure_time = p.departure_time;
      streams.push_back(s);
    }
  }
  return streams;
}

}  // namespace viewadapt::view
