#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "star/executor.hpp"
#include "star/world.hpp"

#ifndef STAR_FIXTURE_DIR
#error "STAR_FIXTURE_DIR must point at tests/fixtures"
#endif

namespace star::testing {

inline std::string fixture_path(const std::string& name) { return std::string(STAR_FIXTURE_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline nlohmann::json read_fixture(const std::string& name) {
  return nlohmann::json::parse(read_text(fixture_path(name)));
}

// Empty-army world on a hand-drawn map (rows of terrain glyphs, row 0 first).
inline WorldState blank_world(const std::vector<std::string>& rows, Mode mode = Mode::TurnBased,
                              const ScenarioConfig& scenario = {}) {
  std::string dump = std::to_string(rows.front().size()) + " " + std::to_string(rows.size()) + "\n";
  for (const auto& r : rows) dump += r + "\n";
  WorldState world;
  world.mode = mode;
  world.terrain = parse_map(dump);
  world.horizon_turns = scenario.horizon_turns;
  world.horizon_ms = scenario.horizon_ms;
  for (int side = 0; side < 2; ++side) {
    world.factions[side].name = scenario.factions[side];
    world.factions[side].manpower = scenario.rules.initial_manpower;
    world.factions[side].supplies = scenario.rules.initial_supplies;
    world.factions[side].construction_points = scenario.rules.construction_points;
  }
  if (mode == Mode::TurnBased) world.active_side = 0;
  return world;
}

inline std::vector<std::string> open_field(int w = 9, int h = 9) {
  return std::vector<std::string>(static_cast<std::size_t>(h), std::string(static_cast<std::size_t>(w), 'P'));
}

// Call after spawning so surviving fractions have a denominator.
inline void seal(WorldState& world) {
  for (int side = 0; side < 2; ++side) world.factions[side].initial_soldiers = soldiers_of(world, side);
}

inline void register_both(ActionExecutor& ex) {
  for (int side = 0; side < 2; ++side) {
    ex.register_agent({{"faction", ex.world().factions[side].name},
                       {"agent_id", "agent" + std::to_string(side)},
                       {"model_id", "fixture"}});
  }
}

inline nlohmann::json move_to(EntityId unit, int col, int row) {
  return {{"action", "move"}, {"params", {{"unit_id", unit}, {"target_position", {{"col", col}, {"row", row}}}}}};
}

inline nlohmann::json attack(EntityId unit, EntityId target) {
  return {{"action", "attack"}, {"params", {{"unit_id", unit}, {"target_id", target}}}};
}

inline nlohmann::json simple(const std::string& action, nlohmann::json params = nlohmann::json::object()) {
  return {{"action", action}, {"params", std::move(params)}};
}

}  // namespace star::testing
