#pragma once

#include <string>

#include "star/world.hpp"

namespace star {

// SHA-256 (lowercase hex) over a canonical byte encoding of the world:
// little-endian fixed-width integers, doubles never appear, entities and map
// entries in ascending key order.
std::string snapshot_digest(const WorldState& world);

}  // namespace star
