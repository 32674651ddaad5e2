#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "viewadapt/sim/room.hpp"

namespace viewadapt::sim {

struct MobilityConfig {
  double p_stay = 0.3;
  double p_walk = 0.5;
  double p_turn = 0.2;
  double step_length = 0.1;         // meters per tick
  double turn_step = kPi / 12;      // radians per tick
  double tick = 0.1;                // seconds
};

// Throws InvalidArgument unless probabilities lie in [0,1] and sum to 1 within
// 1e-9, step_length >= 0, turn_step >= 0 and tick > 0.
void validate(const MobilityConfig& config);

struct MobilityStats {
  std::uint64_t stays = 0;
  std::uint64_t walks = 0;
  std::uint64_t turns = 0;
};

// Advances every participant |steps| ticks. Each tick every participant draws
// stay / walk / turn; walks that cross the wall reflect off it. The draws for
// tick t depend only on (room.rng_seed, t), so trajectories are reproducible.
Room step_mobility(Room room, const MobilityConfig& config, int steps,
                   MobilityStats* stats = nullptr);

enum class FacingPolicy { kCentroid, kAtLeastOne, kRandom };

std::string_view to_string(FacingPolicy p);
std::optional<FacingPolicy> parse_facing(std::string_view s);

// Returns updated headings, index-aligned with |participants|.
//   centroid     face the centroid of the other participants
//   at_least_one face the nearest other participant
//   random       i.i.d. uniform headings from |seed|
// With a single candidate set of size zero (one participant, or a group of
// one with no one else around) the heading is left unchanged.
// |groups|, when given, restricts "other participants" to the same group
// label; a participant alone in its group falls back to everyone.
std::vector<double> apply_facing(std::span<const view::Participant> participants,
                                 FacingPolicy policy, std::uint64_t seed,
                                 std::span<const int> groups = {});

}  // namespace viewadapt::sim
