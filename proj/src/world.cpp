#include "star/world.hpp"

#include "star/errors.hpp"
#include "star/mapgen.hpp"

namespace star {

std::string_view to_string(Mode m) { return m == Mode::TurnBased ? "turn" : "real"; }

std::optional<Mode> mode_from_string(std::string_view name) {
  if (name == "turn" || name == "turn_based") return Mode::TurnBased;
  if (name == "real" || name == "real_time") return Mode::RealTime;
  return std::nullopt;
}

std::string_view to_string(TerminalReason r) {
  switch (r) {
    case TerminalReason::Elimination: return "elimination";
    case TerminalReason::Horizon: return "horizon";
    case TerminalReason::Forfeit: return "forfeit";
  }
  return "unknown";
}

std::optional<int> side_by_name(const WorldState& world, std::string_view name) {
  for (int s = 0; s < 2; ++s) {
    if (world.factions[s].name == name) return s;
  }
  return std::nullopt;
}

std::optional<EntityId> unit_at(const WorldState& world, HexCoord c) {
  for (const auto& [id, pos] : world.registry.store<Position>().items()) {
    if (pos.at == c) return id;
  }
  return std::nullopt;
}

std::vector<EntityId> units_of(const WorldState& world, int side) {
  std::vector<EntityId> out;
  for (const auto& [id, tag] : world.registry.store<FactionTag>().items()) {
    if (tag.side == side) out.push_back(id);
  }
  return out;
}

int soldiers_of(const WorldState& world, int side) {
  int total = 0;
  for (const EntityId id : units_of(world, side)) {
    if (const auto* count = world.registry.get<UnitCount>(id)) total += count->current;
  }
  return total;
}

EntityId spawn_unit(WorldState& world, int side, UnitType type, HexCoord at,
                    const ScenarioConfig& scenario) {
  if (!world.terrain.contains(at)) throw StarError(ErrorCode::OutOfBounds);
  if (world.terrain.at(at) == Terrain::Water) {
    throw StarError(ErrorCode::ImpassableTile, "cannot spawn on water");
  }
  if (unit_at(world, at)) throw StarError(ErrorCode::OccupiedTile);

  const UnitTemplate& t = scenario.unit(type);
  Registry& reg = world.registry;
  const EntityId id = reg.create();
  reg.emplace(id, Position{at});
  reg.emplace(id, UnitStats{type, t.attack, t.defense, t.attack_range, t.vision_range});
  reg.emplace(id, UnitCount{{t.count_max, t.count_max}});
  reg.emplace(id, MovementPoints{{t.mp_max, t.mp_max}});
  reg.emplace(id, ActionPoints{{t.ap_max, t.ap_max}});
  reg.emplace(id, FactionTag{side});
  reg.emplace(id, StatusEffects{});
  reg.emplace(id, SkillState{scenario.rules.skill_points_per_unit, {}});
  reg.emplace(id, ActionLock{});
  reg.emplace(id, TurnFlags{});
  return id;
}

WorldState build_world(const ScenarioConfig& scenario, Mode mode, std::uint64_t seed) {
  WorldState world;
  world.mode = mode;
  world.seed = seed;
  world.horizon_turns = scenario.horizon_turns;
  world.horizon_ms = scenario.horizon_ms;

  if (scenario.fixed_map) {
    world.terrain = parse_map(*scenario.fixed_map);
  } else {
    TerrainGrid grid = generate_map(seed, scenario.width, scenario.height, scenario.map);
    for (const ArmySlot& slot : scenario.army) {
      grid.set(slot.position, Terrain::Plain);
      grid.set(rotate_180(slot.position, grid.width(), grid.height()), Terrain::Plain);
    }
    world.terrain = mirror_symmetrize(grid, seed);
  }

  for (int side = 0; side < 2; ++side) {
    FactionState& f = world.factions[side];
    f.name = scenario.factions[side];
    f.manpower = scenario.rules.initial_manpower;
    f.supplies = scenario.rules.initial_supplies;
    f.construction_points = scenario.rules.construction_points;
  }
  // Units are created alternately so both armies get interleaved ids.
  for (const ArmySlot& slot : scenario.army) {
    spawn_unit(world, 0, slot.type, slot.position, scenario);
    spawn_unit(world, 1, slot.type,
               rotate_180(slot.position, world.terrain.width(), world.terrain.height()), scenario);
  }
  for (int side = 0; side < 2; ++side) {
    world.factions[side].initial_soldiers = soldiers_of(world, side);
  }
  if (mode == Mode::TurnBased) world.active_side = 0;
  return world;
}

}  // namespace star
