#include "star/observation.hpp"

namespace star {

using nlohmann::json;

std::string_view to_string(ObservationLevel level) {
  switch (level) {
    case ObservationLevel::Basic: return "basic";
    case ObservationLevel::Detailed: return "detailed";
    case ObservationLevel::Tactical: return "tactical";
  }
  return "basic";
}

std::optional<ObservationLevel> observation_level_from_string(std::string_view name) {
  if (name == "basic") return ObservationLevel::Basic;
  if (name == "detailed") return ObservationLevel::Detailed;
  if (name == "tactical") return ObservationLevel::Tactical;
  return std::nullopt;
}

std::set<HexCoord> visible_cells(const WorldState& world, int side) {
  const TerrainGrid& grid = world.terrain;
  // A line between two map cells can clip a cell just off the jagged map
  // edge; such cells hold nothing and never block.
  const auto blocks = [&grid](HexCoord c) {
    return grid.contains(c) && terrain_info(grid.at(c)).blocks_vision;
  };
  std::set<HexCoord> out;
  for (const EntityId id : units_of(world, side)) {
    const auto* pos = world.registry.get<Position>(id);
    const auto* stats = world.registry.get<UnitStats>(id);
    if (!pos || !stats) continue;
    const int range = stats->vision_range;
    for (int col = pos->at.col - 2 * range; col <= pos->at.col + 2 * range; ++col) {
      for (int row = pos->at.row - 2 * range; row <= pos->at.row + 2 * range; ++row) {
        const HexCoord c{col, row};
        if (!grid.contains(c) || hex_distance(pos->at, c) > range) continue;
        if (out.contains(c)) continue;
        if (line_of_sight(pos->at, c, blocks)) out.insert(c);
      }
    }
  }
  return out;
}

std::string_view estimate_band(int current, int max) {
  if (max <= 0) return "low";
  // Integer comparisons against 34% and 66% of max.
  if (current * 100 < 34 * max) return "low";
  if (current * 100 > 66 * max) return "high";
  return "medium";
}

json coord_to_json(HexCoord c) { return {{"col", c.col}, {"row", c.row}}; }

HexCoord coord_from_json(const json& doc) {
  if (!doc.is_object()) throw StarError(ErrorCode::InvalidParams, "position must be {col, row}");
  const auto col = doc.find("col");
  const auto row = doc.find("row");
  if (col == doc.end() || row == doc.end() || !col->is_number_integer() ||
      !row->is_number_integer()) {
    throw StarError(ErrorCode::InvalidParams, "position must be {col: int, row: int}");
  }
  return {col->get<int>(), row->get<int>()};
}

json own_unit_record(const WorldState& world, const Rules& rules, EntityId id,
                     ObservationLevel level, const std::set<HexCoord>& visible) {
  const Registry& reg = world.registry;
  const auto& stats = reg.require<UnitStats>(id);
  const auto& count = reg.require<UnitCount>(id);
  const HexCoord at = reg.require<Position>(id).at;
  json unit = {
      {"id", id},
      {"type", to_string(stats.type)},
      {"position", coord_to_json(at)},
      {"unit_count", {{"current", count.current}, {"max", count.max}}},
  };
  if (level == ObservationLevel::Basic) return unit;

  const auto& mp = reg.require<MovementPoints>(id);
  const auto& ap = reg.require<ActionPoints>(id);
  unit["movement"] = {{"current", mp.current}, {"max", mp.max}};
  unit["action_points"] = {{"current", ap.current}, {"max", ap.max}};
  unit["combat"] = {{"attack", stats.attack},
                    {"defense", stats.defense},
                    {"attack_range", stats.attack_range},
                    {"vision_range", stats.vision_range}};
  json statuses = json::object();
  if (const auto* st = reg.get<StatusEffects>(id)) {
    for (const auto& [s, turns] : st->active) statuses[std::string(to_string(s))] = turns;
  }
  unit["status_effects"] = statuses;
  if (const auto* sk = reg.get<SkillState>(id)) {
    unit["skills"] = {{"skill_points", sk->skill_points}, {"cooldowns", sk->cooldowns}};
  }
  if (const auto* flags = reg.get<TurnFlags>(id)) unit["rested"] = flags->rested;
  if (world.mode == Mode::RealTime) {
    const auto* lock = reg.get<ActionLock>(id);
    unit["locked_until_ms"] = lock ? lock->locked_until_ms : 0;
  }
  if (level == ObservationLevel::Detailed) return unit;

  json reach = json::array();
  const EntryCost cost = rules.movement_cost(world);
  for (const auto& [cell, c] : reachable_cells(at, world.terrain.width(), world.terrain.height(),
                                               cost, mp.current)) {
    reach.push_back({{"position", coord_to_json(cell)}, {"cost", c}});
  }
  unit["reachable_tiles"] = reach;
  json in_range = json::array();
  const int enemy = opponent(reg.require<FactionTag>(id).side);
  for (const EntityId other : units_of(world, enemy)) {
    const HexCoord there = reg.require<Position>(other).at;
    if (visible.contains(there) && hex_distance(at, there) <= stats.attack_range) {
      in_range.push_back(other);
    }
  }
  unit["enemies_in_range"] = in_range;
  return unit;
}

json build_observation(const WorldState& world, const Rules& rules, int side,
                       ObservationLevel level) {
  const std::set<HexCoord> visible = visible_cells(world, side);
  const Registry& reg = world.registry;

  json own = json::array();
  for (const EntityId id : units_of(world, side)) {
    own.push_back(own_unit_record(world, rules, id, level, visible));
  }

  json enemies = json::array();
  for (const EntityId id : units_of(world, opponent(side))) {
    const HexCoord at = reg.require<Position>(id).at;
    if (!visible.contains(at)) continue;
    const auto& count = reg.require<UnitCount>(id);
    enemies.push_back({
        {"id", id},
        {"type", to_string(reg.require<UnitStats>(id).type)},
        {"position", coord_to_json(at)},
        {"estimate_count", estimate_band(count.current, count.max)},
    });
  }

  json tiles = json::array();
  for (const HexCoord c : visible) tiles.push_back(coord_to_json(c));

  const FactionState& me = world.factions[side];
  json strategic = {
      {"turn_number", world.turn_number},
      {"resources", {{"manpower", me.manpower}, {"supplies", me.supplies}}},
      {"construction_points", me.construction_points},
      {"mode", to_string(world.mode)},
  };
  if (world.mode == Mode::TurnBased) {
    strategic["active_faction"] =
        world.active_side ? json(world.factions[*world.active_side].name) : json(nullptr);
    strategic["horizon_turns"] = world.horizon_turns;
  } else {
    strategic["clock_ms"] = world.clock_ms;
    strategic["horizon_ms"] = world.horizon_ms;
  }

  // Terrain and ownership are public; only units are fogged.
  json rows = json::array();
  json owners = json::array();
  for (int row = 0; row < world.terrain.height(); ++row) {
    std::string line;
    std::string own_line;
    for (int col = 0; col < world.terrain.width(); ++col) {
      line += terrain_info(world.terrain.at({col, row})).glyph;
      const int o = world.terrain.owner({col, row});
      own_line += o == kNeutral ? '.' : (o == side ? 'o' : 'x');
    }
    rows.push_back(line);
    owners.push_back(own_line);
  }

  return {
      {"faction", me.name},
      {"opponent", world.factions[opponent(side)].name},
      {"observation_level", to_string(level)},
      {"own_units", own},
      {"known_enemy_units", enemies},
      {"strategic_info", strategic},
      {"visible_tiles", tiles},
      {"map",
       {{"width", world.terrain.width()},
        {"height", world.terrain.height()},
        {"terrain", rows},
        {"ownership", owners}}},
  };
}

}  // namespace star
