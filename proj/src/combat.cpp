#include "star/combat.hpp"

#include <algorithm>
#include <cmath>

namespace star {

using nlohmann::json;

namespace {

// Sides touched by a refresh: the active side in turn-based play, both sides
// in real time.
std::vector<int> refreshed_sides(const WorldState& world) {
  if (world.mode == Mode::TurnBased) return {world.active_side.value_or(0)};
  return {0, 1};
}

void tick_statuses(WorldState& world) {
  for (const int side : refreshed_sides(world)) {
    for (const EntityId id : units_of(world, side)) {
      auto* st = world.registry.get<StatusEffects>(id);
      if (!st) continue;
      for (auto it = st->active.begin(); it != st->active.end();) {
        if (it->second > 0 && --it->second == 0) {
          it = st->active.erase(it);
        } else {
          ++it;
        }
      }
    }
  }
}

void tick_cooldowns(WorldState& world) {
  for (const int side : refreshed_sides(world)) {
    for (const EntityId id : units_of(world, side)) {
      auto* sk = world.registry.get<SkillState>(id);
      if (!sk) continue;
      for (auto it = sk->cooldowns.begin(); it != sk->cooldowns.end();) {
        if (--it->second <= 0) {
          it = sk->cooldowns.erase(it);
        } else {
          ++it;
        }
      }
    }
  }
}

void restore_gauges(WorldState& world) {
  for (const int side : refreshed_sides(world)) {
    for (const EntityId id : units_of(world, side)) {
      if (world.mode == Mode::TurnBased) {
        if (auto* ap = world.registry.get<ActionPoints>(id)) ap->current = ap->max;
        if (auto* mp = world.registry.get<MovementPoints>(id)) mp->current = mp->max;
      }
      if (auto* flags = world.registry.get<TurnFlags>(id)) *flags = TurnFlags{};
    }
  }
}

}  // namespace

double effectiveness(double ratio, const EffectivenessCurve& curve) {
  if (!(ratio >= 0.0 && ratio <= 1.0)) {
    throw StarError(ErrorCode::DomainError, "effectiveness ratio outside [0, 1]");
  }
  if (ratio == 1.0) return 1.0;
  return curve.weight * ratio + (1.0 - curve.weight) * std::pow(ratio, curve.exponent);
}

double effective_attack(const CombatInputs& in, const EffectivenessCurve& curve) {
  return in.a_base * effectiveness(in.r_count, curve) * in.s_status * in.t_terrain;
}

double effective_defense(double base_defense, double terrain_bonus, double fort_bonus, double cap) {
  return base_defense * (1.0 + std::min(terrain_bonus + fort_bonus, cap));
}

int casualties_for(double a_eff, double d_eff) {
  const double raw = a_eff * 100.0 / (100.0 + d_eff);
  return raw <= 0.0 ? 0 : static_cast<int>(std::lround(raw));
}

json to_json(const BattleReport& r) {
  return {
      {"attacker_id", r.attacker},
      {"defender_id", r.defender},
      {"damage_dealt", r.damage_dealt},
      {"casualties", r.damage_dealt},
      {"defender_count_before", r.defender_count_before},
      {"defender_count_after", r.defender_count_after},
      {"attack_effective", r.attack_effective},
      {"defense_effective", r.defense_effective},
      {"terrain_modifier_applied", r.terrain_modifier_applied},
      {"fortification_modifier_applied", r.fortification_modifier_applied},
      {"defender_destroyed", r.defender_destroyed},
  };
}

Rules::Rules(ScenarioConfig scenario) : scenario_(std::move(scenario)) {
  turn_end_.add("status_countdown", tick_statuses);
  turn_end_.add("skill_cooldowns", tick_cooldowns);
  turn_end_.add("restore_gauges", restore_gauges);
  turn_end_.add("city_income", [this](WorldState& world) {
    for (const int side : refreshed_sides(world)) {
      int cities = 0;
      for (std::size_t i = 0; i < world.terrain.size(); ++i) {
        cities += world.terrain.owners()[i] == side && world.terrain.tiles()[i] == Terrain::City;
      }
      world.factions[side].manpower += cities * config().city_manpower_per_turn;
      world.factions[side].supplies += cities * config().city_supplies_per_turn;
    }
  });
}

double Rules::status_multiplier(const StatusEffects& statuses) const {
  double m = 1.0;
  for (const auto& [status, _] : statuses.active) {
    if (status == Status::MoraleBoost) m *= config().morale_boost_multiplier;
    if (status == Status::Fatigue) m *= config().fatigue_multiplier;
  }
  return m;
}

EntryCost Rules::movement_cost(const WorldState& world) const {
  return [&world](HexCoord c) -> std::optional<int> {
    if (!world.terrain.contains(c)) return std::nullopt;
    if (unit_at(world, c)) return std::nullopt;
    return terrain_info(world.terrain.at(c)).move_cost;
  };
}

void Rules::require_unit(const WorldState& world, EntityId unit) const {
  if (!world.registry.alive(unit)) throw StarError(ErrorCode::UnknownUnit);
  if (!world.registry.has<Position, UnitStats, UnitCount, FactionTag>(unit)) {
    throw StarError(ErrorCode::MissingComponent);
  }
  if (const auto* flags = world.registry.get<TurnFlags>(unit); flags && flags->rested) {
    throw StarError(ErrorCode::UnitResting, "unit is resting for the rest of this turn");
  }
}

void Rules::spend_ap(WorldState& world, EntityId unit) const {
  if (world.mode != Mode::TurnBased) return;
  auto* ap = world.registry.get<ActionPoints>(unit);
  if (!ap) throw StarError(ErrorCode::MissingComponent);
  if (ap->current < 1) throw StarError(ErrorCode::InsufficientAP);
  --ap->current;
  if (auto* flags = world.registry.get<TurnFlags>(unit)) ++flags->ap_spent;
}

BattleReport Rules::strike(WorldState& world, EntityId attacker, EntityId defender,
                           double s_status) const {
  Registry& reg = world.registry;
  const auto& a_stats = reg.require<UnitStats>(attacker);
  const auto& a_count = reg.require<UnitCount>(attacker);
  const auto& d_stats = reg.require<UnitStats>(defender);
  auto& d_count = reg.require<UnitCount>(defender);
  const HexCoord d_at = reg.require<Position>(defender).at;

  const double terrain_bonus = terrain_info(world.terrain.at(d_at)).defense_bonus;
  const double fort_bonus = world.terrain.fortification(d_at) * config().fortification_per_level;
  const CombatInputs in{
      static_cast<double>(a_stats.attack),
      static_cast<double>(a_count.current) / a_count.max,
      s_status,
      1.0,
      fort_bonus,
  };

  BattleReport report;
  report.attacker = attacker;
  report.defender = defender;
  report.attack_effective = effective_attack(in, curve());
  report.defense_effective =
      effective_defense(d_stats.defense, terrain_bonus, fort_bonus, config().defense_cap);
  report.terrain_modifier_applied = terrain_bonus;
  report.fortification_modifier_applied = fort_bonus;
  report.damage_dealt = casualties_for(report.attack_effective, report.defense_effective);
  report.defender_count_before = d_count.current;
  d_count.current = std::max(0, d_count.current - report.damage_dealt);
  report.defender_count_after = d_count.current;
  if (d_count.current == 0) {
    report.defender_destroyed = true;
    reg.destroy(defender);
    if (auto* st = reg.get<StatusEffects>(attacker)) {
      st->active[Status::MoraleBoost] = config().morale_boost_turns;
    }
  }
  return report;
}

BattleReport Rules::resolve_combat(WorldState& world, EntityId attacker, EntityId defender) const {
  require_unit(world, attacker);
  Registry& reg = world.registry;
  if (!reg.alive(defender) || !reg.has<UnitCount>(defender) ||
      reg.require<UnitCount>(defender).current <= 0) {
    throw StarError(ErrorCode::DeadTarget);
  }
  if (reg.require<FactionTag>(attacker).side == reg.require<FactionTag>(defender).side) {
    throw StarError(ErrorCode::FriendlyFire);
  }
  const int range = reg.require<UnitStats>(attacker).attack_range;
  if (hex_distance(reg.require<Position>(attacker).at, reg.require<Position>(defender).at) > range) {
    throw StarError(ErrorCode::OutOfRange);
  }
  spend_ap(world, attacker);
  const double s_status =
      reg.has<StatusEffects>(attacker) ? status_multiplier(reg.require<StatusEffects>(attacker)) : 1.0;
  return strike(world, attacker, defender, s_status);
}

int Rules::apply_move(WorldState& world, EntityId unit, const Path& path) const {
  require_unit(world, unit);
  Registry& reg = world.registry;
  auto* mp = reg.get<MovementPoints>(unit);
  if (!mp) throw StarError(ErrorCode::MissingComponent);
  if (const auto* st = reg.get<StatusEffects>(unit); st && st->active.contains(Status::Confusion)) {
    throw StarError(ErrorCode::StatusForbids, "unit is confused");
  }
  if (path.steps.empty()) throw StarError(ErrorCode::InvalidTarget, "empty path");

  const EntryCost cost = movement_cost(world);
  HexCoord at = reg.require<Position>(unit).at;
  int total = 0;
  for (const HexCoord step : path.steps) {
    if (!world.terrain.contains(step)) throw StarError(ErrorCode::OutOfBounds);
    if (hex_distance(at, step) != 1) throw StarError(ErrorCode::InvalidTarget, "path not contiguous");
    const auto c = cost(step);
    if (!c) throw StarError(ErrorCode::Blocked);
    total += *c;
    at = step;
  }
  if (total != path.total_cost) throw StarError(ErrorCode::InvalidTarget, "path cost mismatch");
  if (total > mp->current) throw StarError(ErrorCode::InsufficientMP);
  mp->current -= total;
  reg.require<Position>(unit).at = at;
  return mp->current;
}

json Rules::apply_support_action(WorldState& world, SupportKind kind, EntityId unit,
                                 const SupportArgs& args) const {
  require_unit(world, unit);
  Registry& reg = world.registry;
  const int side = reg.require<FactionTag>(unit).side;
  const HexCoord here = reg.require<Position>(unit).at;
  const bool turn_based = world.mode == Mode::TurnBased;

  switch (kind) {
    case SupportKind::Rest: {
      auto* ap = reg.get<ActionPoints>(unit);
      if (!ap) throw StarError(ErrorCode::MissingComponent);
      if (turn_based && ap->current < 1) throw StarError(ErrorCode::InsufficientAP);
      ap->current = std::min(ap->max, ap->current + 1);
      std::string relieved;
      auto& st = reg.require<StatusEffects>(unit);
      if (st.active.erase(Status::Fatigue)) {
        relieved = "FATIGUE";
      } else if (auto it = st.active.find(Status::Confusion); it != st.active.end()) {
        relieved = "CONFUSION";
        if (--it->second <= 0) st.active.erase(it);
      }
      if (turn_based) {
        if (auto* mp = reg.get<MovementPoints>(unit)) mp->current = 0;
        reg.require<TurnFlags>(unit).rested = true;
      }
      return {{"unit_id", unit}, {"action_points", ap->current}, {"relieved_status", relieved}};
    }

    case SupportKind::Occupy: {
      const HexCoord target = args.position.value_or(here);
      if (!world.terrain.contains(target)) throw StarError(ErrorCode::OutOfBounds);
      if (hex_distance(here, target) > 1) throw StarError(ErrorCode::OutOfRange);
      if (world.terrain.at(target) == Terrain::Water) throw StarError(ErrorCode::ImpassableTile);
      if (world.terrain.owner(target) == side) throw StarError(ErrorCode::AlreadyOwned);
      if (const auto occupant = unit_at(world, target);
          occupant && reg.require<FactionTag>(*occupant).side != side) {
        throw StarError(ErrorCode::Blocked, "tile held by an enemy unit");
      }
      spend_ap(world, unit);
      const int previous = world.terrain.owner(target);
      world.terrain.set_owner(target, side);
      if (previous != kNeutral) world.terrain.set_fortification(target, 0);
      return {{"unit_id", unit},
              {"position", {{"col", target.col}, {"row", target.row}}},
              {"previous_owner", previous == kNeutral ? json("neutral") : json(world.factions[previous].name)},
              {"owner", world.factions[side].name}};
    }

    case SupportKind::Fortify: {
      const HexCoord target = args.position.value_or(here);
      if (!world.terrain.contains(target)) throw StarError(ErrorCode::OutOfBounds);
      if (hex_distance(here, target) > 1) throw StarError(ErrorCode::OutOfRange);
      if (world.terrain.at(target) == Terrain::Water) {
        throw StarError(ErrorCode::TerrainForbidsConstruction);
      }
      if (world.terrain.owner(target) != side) throw StarError(ErrorCode::NotOwned);
      if (world.terrain.fortification(target) >= config().max_fortification) {
        throw StarError(ErrorCode::MaxFortification);
      }
      if (world.factions[side].construction_points < 1) throw StarError(ErrorCode::InsufficientCP);
      spend_ap(world, unit);
      --world.factions[side].construction_points;
      world.terrain.set_fortification(target, world.terrain.fortification(target) + 1);
      return {{"unit_id", unit},
              {"position", {{"col", target.col}, {"row", target.row}}},
              {"fortification_level", world.terrain.fortification(target)},
              {"construction_points", world.factions[side].construction_points}};
    }

    case SupportKind::Skill: {
      const auto spec_it = config().skills.find(args.skill_name);
      if (spec_it == config().skills.end()) throw StarError(ErrorCode::UnknownSkill);
      const SkillSpec& spec = spec_it->second;
      auto& skills = reg.require<SkillState>(unit);
      if (skills.cooldowns.contains(args.skill_name)) throw StarError(ErrorCode::SkillOnCooldown);
      if (skills.skill_points < spec.sp_cost) throw StarError(ErrorCode::InsufficientSP);
      if (turn_based && reg.require<ActionPoints>(unit).current < 1) {
        throw StarError(ErrorCode::InsufficientAP);
      }
      if (!args.target_unit) throw StarError(ErrorCode::InvalidParams, "skill needs a target unit");
      const EntityId target = *args.target_unit;
      if (!reg.alive(target) || !reg.has<UnitCount>(target)) throw StarError(ErrorCode::DeadTarget);
      if (reg.require<FactionTag>(target).side == side) throw StarError(ErrorCode::FriendlyFire);
      const int dist = hex_distance(here, reg.require<Position>(target).at);

      json detail = {{"unit_id", unit}, {"skill_name", args.skill_name}, {"target_id", target}};
      if (args.skill_name == "ambush") {
        if (dist > 1 + spec.range_bonus) throw StarError(ErrorCode::OutOfRange);
        spend_ap(world, unit);
        auto& st = reg.require<StatusEffects>(target);
        st.active[Status::Confusion] = std::max(st.active[Status::Confusion], config().confusion_turns);
        detail["applied_status"] = "CONFUSION";
      } else {
        // fire_attack and any configured ranged strike: ignores the caster's
        // statuses and leaves the target fatigued.
        const int range = reg.require<UnitStats>(unit).attack_range + spec.range_bonus;
        if (dist > range) throw StarError(ErrorCode::OutOfRange);
        spend_ap(world, unit);
        const BattleReport report = strike(world, unit, target, 1.0);
        if (!report.defender_destroyed) {
          reg.require<StatusEffects>(target).active[Status::Fatigue] = -1;
          detail["applied_status"] = "FATIGUE";
        }
        detail["battle"] = to_json(report);
      }
      skills.skill_points -= spec.sp_cost;
      skills.cooldowns[args.skill_name] = spec.cooldown_turns;
      detail["skill_points"] = skills.skill_points;
      detail["cooldown_turns"] = spec.cooldown_turns;
      return detail;
    }
  }
  throw StarError(ErrorCode::UnknownAction);
}

void Rules::end_turn_refresh(WorldState& world, int side) const {
  if (world.mode != Mode::TurnBased) throw StarError(ErrorCode::NotInThisMode);
  if (world.active_side != side) throw StarError(ErrorCode::NotYourTurn);
  turn_end_.run(world);
  world.active_side = opponent(side);
  if (side == 1) ++world.turn_number;
}

void Rules::realtime_round(WorldState& world) const {
  turn_end_.run(world);
  ++world.turn_number;
}

std::optional<Outcome> Rules::check_victory(const WorldState& world) const {
  if (world.outcome) return world.outcome;
  const std::array<int, 2> left = {soldiers_of(world, 0), soldiers_of(world, 1)};
  const auto fraction = [&](int side) {
    const int total = world.factions[side].initial_soldiers;
    return total > 0 ? static_cast<double>(left[side]) / total : 0.0;
  };
  const std::int64_t elapsed = world.mode == Mode::TurnBased ? world.turn_number : world.clock_ms;

  for (int side = 0; side < 2; ++side) {
    if (world.factions[side].forfeited) {
      const int w = opponent(side);
      return Outcome{w, fraction(w), elapsed, TerminalReason::Forfeit};
    }
  }
  if (left[0] == 0 || left[1] == 0) {
    if (left[0] == 0 && left[1] == 0) return Outcome{std::nullopt, 0.0, elapsed, TerminalReason::Elimination};
    const int w = left[0] == 0 ? 1 : 0;
    return Outcome{w, fraction(w), elapsed, TerminalReason::Elimination};
  }

  const bool horizon = world.mode == Mode::TurnBased ? world.turn_number > world.horizon_turns
                                                     : world.clock_ms >= world.horizon_ms;
  if (!horizon) return std::nullopt;
  const std::int64_t duration =
      world.mode == Mode::TurnBased ? world.horizon_turns : world.clock_ms;
  // Cross-multiplied so equal fractions compare exactly.
  const long long lhs = static_cast<long long>(left[0]) * world.factions[1].initial_soldiers;
  const long long rhs = static_cast<long long>(left[1]) * world.factions[0].initial_soldiers;
  if (lhs == rhs) return Outcome{std::nullopt, fraction(0), duration, TerminalReason::Horizon};
  const int w = lhs > rhs ? 0 : 1;
  return Outcome{w, fraction(w), duration, TerminalReason::Horizon};
}

}  // namespace star
