#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "viewadapt/service/session.hpp"

namespace viewadapt::service {

// JSON wire format. Angles travel in degrees, bandwidths in Mbps.

nlohmann::json to_json(const SessionConfig& config);
nlohmann::json to_json(const FrameState& frame);

// Applies |patch| on top of |base|. Unknown keys, wrong types and values
// that break a config invariant are all collected and thrown together as
// ValidationError. "seed" is accepted only when |allow_seed| is set.
SessionConfig merge_config(const SessionConfig& base, const nlohmann::json& patch,
                           bool allow_seed);

// True when the patch touches keys that reshape the room (participant count,
// placement, bandwidth range, ...), which forces a regenerated scene.
bool reshapes_scene(const nlohmann::json& patch);

}  // namespace viewadapt::service
