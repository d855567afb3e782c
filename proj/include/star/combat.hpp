#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "star/errors.hpp"
#include "star/world.hpp"

namespace star {

// sigma(x) = weight * x + (1 - weight) * x^exponent. Defaults penalise depleted
// units: sigma(x) < x on (0, 1).
struct EffectivenessCurve {
  double weight = 0.5;
  double exponent = 2.0;
};

double effectiveness(double ratio, const EffectivenessCurve& curve = {});

struct CombatInputs {
  double a_base = 0.0;
  double r_count = 1.0;    // current / max soldiers, in [0, 1]
  double s_status = 1.0;   // product of status multipliers
  double t_terrain = 1.0;  // attacker-side terrain multiplier, in (0, 1]
  double fort_bonus = 0.0; // defender fortification bonus fraction
};

// a_base * sigma(r_count) * s_status * t_terrain.
double effective_attack(const CombatInputs& in, const EffectivenessCurve& curve = {});

// base * (1 + min(terrain_bonus + fort_bonus, cap)).
double effective_defense(double base_defense, double terrain_bonus, double fort_bonus, double cap);

// round(a_eff * 100 / (100 + d_eff)), never negative.
int casualties_for(double a_eff, double d_eff);

struct BattleReport {
  EntityId attacker = kInvalidEntity;
  EntityId defender = kInvalidEntity;
  int damage_dealt = 0;  // soldiers lost by the defender
  int defender_count_before = 0;
  int defender_count_after = 0;
  double attack_effective = 0.0;
  double defense_effective = 0.0;
  double terrain_modifier_applied = 0.0;
  double fortification_modifier_applied = 0.0;
  bool defender_destroyed = false;
};

nlohmann::json to_json(const BattleReport& report);

enum class SupportKind { Rest, Occupy, Fortify, Skill };

struct SupportArgs {
  std::optional<HexCoord> position;
  std::string skill_name;
  std::optional<EntityId> target_unit;
};

// Rule handlers for the skirmish scenario. Mutating calls assume the caller
// owns the world (single writer). In real-time worlds AP is neither checked
// nor spent; the scheduler's action locks take its place.
class Rules {
 public:
  explicit Rules(ScenarioConfig scenario);

  const ScenarioConfig& scenario() const { return scenario_; }
  const RuleConfig& config() const { return scenario_.rules; }
  EffectivenessCurve curve() const { return {config().curve_weight, config().curve_exponent}; }

  double status_multiplier(const StatusEffects& statuses) const;

  // Entry cost for a moving unit: terrain cost, occupied tiles impassable.
  EntryCost movement_cost(const WorldState& world) const;

  BattleReport resolve_combat(WorldState& world, EntityId attacker, EntityId defender) const;

  // Returns remaining MP.
  int apply_move(WorldState& world, EntityId unit, const Path& path) const;

  nlohmann::json apply_support_action(WorldState& world, SupportKind kind, EntityId unit,
                                      const SupportArgs& args) const;

  void end_turn_refresh(WorldState& world, int side) const;

  // Real-time counterpart of the turn refresh: statuses, cooldowns, resources.
  void realtime_round(WorldState& world) const;

  std::optional<Outcome> check_victory(const WorldState& world) const;

 private:
  void require_unit(const WorldState& world, EntityId unit) const;
  void spend_ap(WorldState& world, EntityId unit) const;
  BattleReport strike(WorldState& world, EntityId attacker, EntityId defender,
                      double s_status) const;

  ScenarioConfig scenario_;
  SystemSchedule turn_end_;
};

}  // namespace star
