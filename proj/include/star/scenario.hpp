#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "star/components.hpp"
#include "star/hex.hpp"

namespace star {

struct UnitTemplate {
  int attack = 0;
  int defense = 0;
  int attack_range = 1;
  int vision_range = 3;
  int count_max = 100;
  int mp_max = 3;
  int ap_max = 2;
};

struct MapParams {
  double frequency = 0.18;
  int octaves = 3;
  double water_fraction = 0.10;
  double mountain_fraction = 0.06;
  double hill_fraction = 0.12;
  double forest_fraction = 0.20;
  int cities = 4;
  int smoothing_passes = 2;
  int max_retries = 16;
};

struct SkillSpec {
  int sp_cost = 1;
  int cooldown_turns = 3;
  int range_bonus = 0;
};

struct RuleConfig {
  // Effectiveness curve: w * x + (1 - w) * x^exponent.
  double curve_weight = 0.5;
  double curve_exponent = 2.0;

  double defense_cap = 0.8;
  double fortification_per_level = 0.15;
  int max_fortification = 3;

  double morale_boost_multiplier = 1.2;
  int morale_boost_turns = 2;
  int confusion_turns = 1;
  double fatigue_multiplier = 0.8;

  std::map<std::string, SkillSpec> skills = {
      {"fire_attack", {1, 3, 1}},
      {"ambush", {1, 3, 0}},
  };
  int skill_points_per_unit = 2;
  int construction_points = 5;

  int initial_manpower = 800;
  int initial_supplies = 400;
  int city_manpower_per_turn = 10;
  int city_supplies_per_turn = 5;

  // Real-time: statuses, cooldowns and resources tick once per round.
  std::int64_t realtime_round_ms = 10'000;
};

struct ArmySlot {
  UnitType type = UnitType::Infantry;
  HexCoord position;  // side 0; side 1 is the 180-degree image
};

struct ScenarioConfig {
  std::string name = "rotk_skirmish";
  int width = 15;
  int height = 15;
  std::array<std::string, 2> factions = {"wei", "shu"};
  MapParams map;
  // When set, this map dump replaces procedural generation.
  std::optional<std::string> fixed_map;
  std::map<UnitType, UnitTemplate> units = {
      {UnitType::Infantry, {60, 70, 1, 3, 100, 3, 2}},
      {UnitType::Cavalry, {85, 40, 1, 4, 100, 5, 2}},
      {UnitType::Archer, {70, 30, 2, 3, 100, 3, 2}},
  };
  std::vector<ArmySlot> army = {
      {UnitType::Infantry, {2, 2}},
      {UnitType::Cavalry, {1, 2}},
      {UnitType::Archer, {2, 1}},
  };
  int horizon_turns = 100;
  std::int64_t horizon_ms = 300'000;
  RuleConfig rules;

  const UnitTemplate& unit(UnitType t) const { return units.at(t); }
};

void to_json(nlohmann::json& j, const ScenarioConfig& s);
void from_json(const nlohmann::json& j, ScenarioConfig& s);

// Reads a scenario file (JSON object; every key optional, missing keys keep
// the defaults above).
ScenarioConfig load_scenario(const std::string& path);

HexCoord rotate_180(HexCoord c, int width, int height);

}  // namespace star
