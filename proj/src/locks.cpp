#include "star/locks.hpp"

#include <cmath>

namespace star {

void to_json(nlohmann::json& j, const LockConstants& c) {
  j = {{"c_move", c.c_move},
       {"c_attack", c.c_attack},
       {"c_support", c.c_support},
       {"tick_ms", c.tick_ms},
       {"mp_regen_per_s", c.mp_regen_per_s}};
}

void from_json(const nlohmann::json& j, LockConstants& c) {
  c.c_move = j.value("c_move", c.c_move);
  c.c_attack = j.value("c_attack", c.c_attack);
  c.c_support = j.value("c_support", c.c_support);
  c.tick_ms = j.value("tick_ms", c.tick_ms);
  c.mp_regen_per_s = j.value("mp_regen_per_s", c.mp_regen_per_s);
}

double action_lock_duration(ActionKind kind, int path_cost, const LockConstants& c) {
  switch (kind) {
    case ActionKind::Move: return c.c_move * path_cost;
    case ActionKind::Attack: return c.c_attack;
    case ActionKind::Rest:
    case ActionKind::Occupy:
    case ActionKind::Fortify:
    case ActionKind::Skill: return c.c_support;
    default: return 0.0;
  }
}

std::int64_t action_lock_ms(ActionKind kind, int path_cost, const LockConstants& c) {
  return std::llround(action_lock_duration(kind, path_cost, c) * 1000.0);
}

}  // namespace star
