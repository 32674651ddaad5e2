#include "viewadapt/sim/room.hpp"

#include <string>

#include "viewadapt/errors.hpp"

namespace viewadapt::sim {

bool inside(const Room& room, Vec2 p) { return norm(p) <= room.radius() + 1e-9; }

void validate(const Room& room) {
  if (!(room.diameter > 0.0)) throw InvalidArgument("room diameter must be positive");
  view::validate(room.viewer);
  if (!inside(room, room.viewer.position)) {
    throw InvalidArgument("viewer lies outside the room");
  }
  for (const auto& p : room.participants) {
    if (!inside(room, p.position)) {
      throw InvalidArgument("participant " + std::to_string(p.id) + " lies outside the room");
    }
    view::validate(p);
  }
}

}  // namespace viewadapt::sim
