#pragma once

#include <cstdint>

#include "json.hpp"
#include "star/action.hpp"

namespace star {

// Real-time throttling constants. Locks replace the AP economy in real time.
struct LockConstants {
  double c_move = 0.5;    // seconds per MP of path cost
  double c_attack = 1.0;  // seconds
  double c_support = 0.5; // seconds, rest/occupy/fortify/skill
  std::int64_t tick_ms = 100;
  double mp_regen_per_s = 1.0;

  friend bool operator==(const LockConstants&, const LockConstants&) = default;
};

void to_json(nlohmann::json& j, const LockConstants& c);
void from_json(const nlohmann::json& j, LockConstants& c);

// Seconds a unit stays busy after a successful action. path_cost only matters
// for moves; information and system actions cost nothing.
double action_lock_duration(ActionKind kind, int path_cost, const LockConstants& c);

// The same duration in whole milliseconds (rounded to nearest).
std::int64_t action_lock_ms(ActionKind kind, int path_cost, const LockConstants& c);

}  // namespace star
