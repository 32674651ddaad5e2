#include "viewadapt/sim/mobility.hpp"

#include <cmath>
#include <limits>

#include "viewadapt/errors.hpp"
#include "viewadapt/sim/random.hpp"

namespace viewadapt::sim {

namespace {

struct Pose {
  Vec2 position;
  double heading;
};

// Moves |pose| by |length| along its heading inside a disk of |radius|,
// mirroring the direction about the wall normal at every contact.
Pose walk(Pose pose, double length, double radius) {
  Vec2 p = pose.position;
  Vec2 d = unit_from_angle(pose.heading);
  double remaining = length;
  for (int bounce = 0; bounce < 16 && remaining > 0.0; ++bounce) {
    const Vec2 q = p + d * remaining;
    if (norm(q) <= radius) {
      p = q;
      remaining = 0.0;
      break;
    }
    // Smallest t >= 0 with |p + t d| = radius (|d| = 1, p inside).
    const double b = dot(p, d);
    const double c = dot(p, p) - radius * radius;
    const double t = std::max(0.0, -b + std::sqrt(std::max(0.0, b * b - c)));
    const Vec2 hit = p + d * t;
    const Vec2 n = hit * (1.0 / norm(hit));
    d = d - n * (2.0 * dot(d, n));
    p = hit;
    remaining -= t;
  }
  if (norm(p) > radius) p = p * (radius * (1.0 - 1e-12) / norm(p));
  return {p, wrap_angle(angle_of(d))};
}

}  // namespace

void validate(const MobilityConfig& c) {
  auto in_unit = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in_unit(c.p_stay) || !in_unit(c.p_walk) || !in_unit(c.p_turn)) {
    throw InvalidArgument("mode probabilities must lie in [0, 1]");
  }
  if (std::abs(c.p_stay + c.p_walk + c.p_turn - 1.0) > 1e-9) {
    throw InvalidArgument("mode probabilities must sum to 1");
  }
  if (!(c.step_length >= 0.0) || !(c.turn_step >= 0.0) || !(c.tick > 0.0)) {
    throw InvalidArgument("mobility step_length/turn_step must be >= 0 and tick > 0");
  }
}

Room step_mobility(Room room, const MobilityConfig& config, int steps, MobilityStats* stats) {
  validate(config);
  if (steps < 0) throw InvalidArgument("steps must be nonnegative");
  const double radius = room.radius();
  for (int s = 0; s < steps; ++s) {
    Rng rng(derive_seed(room.rng_seed, 0x6d6f62696c000000ULL + room.tick));
    for (auto& p : room.participants) {
      const double u = rng.uniform();
      if (u < config.p_stay) {
        if (stats) ++stats->stays;
      } else if (u < config.p_stay + config.p_walk) {
        const Pose next = walk({p.position, p.heading}, config.step_length, radius);
        p.position = next.position;
        p.heading = next.heading;
        if (stats) ++stats->walks;
      } else {
        p.heading = wrap_angle(p.heading + (rng.coin() ? config.turn_step : -config.turn_step));
        if (stats) ++stats->turns;
      }
    }
    ++room.tick;
  }
  return room;
}

std::string_view to_string(FacingPolicy p) {
  switch (p) {
    case FacingPolicy::kCentroid: return "centroid";
    case FacingPolicy::kAtLeastOne: return "at_least_one";
    case FacingPolicy::kRandom: return "random";
  }
  return "?";
}

std::optional<FacingPolicy> parse_facing(std::string_view s) {
  for (auto p : {FacingPolicy::kCentroid, FacingPolicy::kAtLeastOne, FacingPolicy::kRandom}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

std::vector<double> apply_facing(std::span<const view::Participant> participants,
                                 FacingPolicy policy, std::uint64_t seed,
                                 std::span<const int> groups) {
  if (!groups.empty() && groups.size() != participants.size()) {
    throw InvalidArgument("facing groups must be index-aligned with participants");
  }
  const std::size_t n = participants.size();
  std::vector<double> headings(n);
  for (std::size_t i = 0; i < n; ++i) headings[i] = participants[i].heading;

  if (policy == FacingPolicy::kRandom) {
    Rng rng(derive_seed(seed, 0x66616365ULL));
    for (auto& h : headings) h = kTwoPi * rng.uniform();
    return headings;
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto candidate = [&](std::size_t j, bool grouped) {
      return j != i && (!grouped || groups[j] == groups[i]);
    };
    bool grouped = !groups.empty();
    if (grouped) {
      bool any = false;
      for (std::size_t j = 0; j < n && !any; ++j) any = candidate(j, true);
      grouped = any;
    }

    Vec2 target;
    bool found = false;
    if (policy == FacingPolicy::kCentroid) {
      Vec2 sum;
      int count = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (!candidate(j, grouped)) continue;
        sum = sum + participants[j].position;
        ++count;
      }
      if (count > 0) {
        target = sum * (1.0 / count);
        found = true;
      }
    } else {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < n; ++j) {
        if (!candidate(j, grouped)) continue;
        const double d = distance(participants[i].position, participants[j].position);
        if (d < best) {
          best = d;
          target = participants[j].position;
          found = true;
        }
      }
    }
    const Vec2 to = target - participants[i].position;
    if (found && (to.x != 0.0 || to.y != 0.0)) headings[i] = wrap_angle(angle_of(to));
  }
  return headings;
}

}  // namespace viewadapt::sim
