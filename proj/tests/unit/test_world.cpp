#include <map>

#include "doctest.h"
#include "fixtures.hpp"
#include "star/digest.hpp"
#include "star/mapgen.hpp"
#include "star/world.hpp"

using namespace star;
using namespace star::testing;

TEST_CASE("terrain table") {
  CHECK(terrain_info(Terrain::Plain).move_cost == 1);
  CHECK(terrain_info(Terrain::Forest).move_cost == 2);
  CHECK(terrain_info(Terrain::Hill).move_cost == 2);
  CHECK(terrain_info(Terrain::Mountain).move_cost == 3);
  CHECK_FALSE(terrain_info(Terrain::Water).move_cost);
  CHECK(terrain_info(Terrain::City).move_cost == 1);
  CHECK(terrain_info(Terrain::Plain).defense_bonus == 0.0);
  CHECK(terrain_info(Terrain::Forest).defense_bonus == doctest::Approx(0.2));
  CHECK(terrain_info(Terrain::Hill).defense_bonus == doctest::Approx(0.3));
  CHECK(terrain_info(Terrain::Mountain).defense_bonus == doctest::Approx(0.5));
  CHECK(terrain_info(Terrain::City).defense_bonus == doctest::Approx(0.4));
  CHECK_FALSE(terrain_info(Terrain::Plain).blocks_vision);
  CHECK(terrain_info(Terrain::Forest).blocks_vision);
  CHECK(terrain_info(Terrain::Hill).blocks_vision);
  CHECK(terrain_info(Terrain::Mountain).blocks_vision);
  CHECK_FALSE(terrain_info(Terrain::Water).blocks_vision);
  CHECK(terrain_info(Terrain::City).blocks_vision);
  for (int i = 0; i < kTerrainCount; ++i) {
    const auto t = static_cast<Terrain>(i);
    CHECK(terrain_from_glyph(terrain_info(t).glyph) == t);
    CHECK(terrain_from_name(terrain_info(t).name) == t);
  }
}

TEST_CASE("map dump round-trips") {
  const TerrainGrid g = generate_map(3, 15, 15, {});
  const std::string text = dump_map(g);
  CHECK(text.rfind("15 15\n", 0) == 0);
  CHECK(parse_map(text) == g);
  CHECK_THROWS(parse_map("3 2\nPPP\n"));
  CHECK_THROWS(parse_map("3 1\nPXP\n"));
  CHECK_THROWS(parse_map("garbage"));
}

TEST_CASE("map generation is deterministic and connected") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const TerrainGrid a = generate_map(seed, 15, 15, {});
    const TerrainGrid b = generate_map(seed, 15, 15, {});
    CHECK(a == b);
    CHECK(land_components(a) == 1);
  }
  CHECK(generate_map(1, 15, 15, {}) != generate_map(2, 15, 15, {}));
}

TEST_CASE("zero water fraction yields no water") {
  MapParams p;
  p.water_fraction = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TerrainGrid g = generate_map(seed, 15, 15, p);
    CHECK(std::count(g.tiles().begin(), g.tiles().end(), Terrain::Water) == 0);
  }
}

TEST_CASE("every terrain type appears across a seed sweep") {
  std::set<Terrain> seen;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TerrainGrid g = generate_map(seed, 15, 15, {});
    seen.insert(g.tiles().begin(), g.tiles().end());
  }
  CHECK(seen.size() == kTerrainCount);
}

TEST_CASE("degenerate map parameters") {
  CHECK_THROWS_AS(generate_map(1, 4, 15, {}), std::invalid_argument);
  const auto code_of = [](const MapParams& p) {
    try {
      generate_map(1, 15, 15, p);
    } catch (const StarError& e) {
      return std::optional<ErrorCode>(e.code());
    }
    return std::optional<ErrorCode>();
  };
  MapParams drowned;
  drowned.water_fraction = 1.0;
  CHECK(code_of(drowned) == ErrorCode::DegenerateMap);
  MapParams crowded;
  crowded.forest_fraction = 0.9;
  CHECK(code_of(crowded) == ErrorCode::DegenerateMap);
}

TEST_CASE("perlin noise is seeded and bounded") {
  const PerlinNoise a(9), b(9), c(10);
  double diff = 0;
  for (int i = 0; i < 200; ++i) {
    const double x = i * 0.37, y = i * 0.11;
    CHECK(a.noise(x, y) == b.noise(x, y));
    CHECK(a.fractal(x, y, 3) >= -1.5);
    CHECK(a.fractal(x, y, 3) <= 1.5);
    diff += std::abs(a.noise(x, y) - c.noise(x, y));
  }
  CHECK(diff > 0);
}

TEST_CASE("mirror symmetrisation") {
  const TerrainGrid plain(15, 15);
  CHECK(mirror_symmetrize(plain, 4) == plain);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const TerrainGrid g = mirror_symmetrize(generate_map(seed, 15, 15, {}), seed);
    CHECK(is_rotation_invariant(g));
    CHECK(land_components(g) == 1);
    // Start-zone histograms: the 5x5 corner blocks are rotations of each other.
    std::map<Terrain, int> near, far;
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) {
        ++near[g.at({c, r})];
        ++far[g.at(rotate_180({c, r}, 15, 15))];
      }
    CHECK(near == far);
  }
}

TEST_CASE("spawn_unit") {
  ScenarioConfig s;
  WorldState w = blank_world({"PPP", "PWP", "PPP"}, Mode::TurnBased, s);
  const EntityId cav = spawn_unit(w, 0, UnitType::Cavalry, {2, 2}, s);
  CHECK(cav == 1);
  CHECK(w.registry.require<UnitStats>(cav).attack == 85);
  CHECK(w.registry.require<UnitStats>(cav).defense == 40);
  CHECK(w.registry.require<UnitCount>(cav).current == 100);
  CHECK(w.registry.require<UnitCount>(cav).max == 100);
  CHECK(w.registry.require<MovementPoints>(cav).max == 5);
  CHECK(w.registry.require<ActionPoints>(cav).current == 2);
  CHECK(w.registry.has<Position, UnitStats, UnitCount, MovementPoints, ActionPoints, FactionTag,
                       StatusEffects, SkillState>(cav));
  const EntityId inf = spawn_unit(w, 1, UnitType::Infantry, {0, 0}, s);
  CHECK(inf != cav);
  try {
    spawn_unit(w, 1, UnitType::Archer, {1, 1}, s);
    FAIL("spawn on water accepted");
  } catch (const StarError& e) {
    CHECK(e.code() == ErrorCode::ImpassableTile);
  }
  try {
    spawn_unit(w, 1, UnitType::Archer, {0, 0}, s);
    FAIL("spawn on occupied tile accepted");
  } catch (const StarError& e) {
    CHECK(e.code() == ErrorCode::OccupiedTile);
  }
}

TEST_CASE("registry ids never repeat and views stay fresh") {
  Registry reg;
  std::vector<EntityId> ids;
  for (int i = 0; i < 5; ++i) {
    ids.push_back(reg.create());
    reg.emplace(ids.back(), Position{{i, 0}});
  }
  CHECK(std::is_sorted(ids.begin(), ids.end()));
  reg.destroy(ids[2]);
  const EntityId next = reg.create();
  CHECK(next > ids.back());
  CHECK(reg.view<Position>().size() == 4);
  reg.emplace(next, Position{{9, 9}});
  reg.emplace(next, UnitStats{});
  CHECK(reg.view<Position>().size() == 5);
  CHECK(reg.view<Position, UnitStats>() == std::vector<EntityId>{next});
  reg.destroy(ids[0]);
  for (const EntityId id : reg.view<Position>()) CHECK(reg.alive(id));
  CHECK_FALSE(reg.get<Position>(ids[0]));
  CHECK_THROWS(reg.emplace(ids[0], Position{}));
  CHECK_THROWS(reg.require<UnitStats>(ids[1]));
}

TEST_CASE("build_world produces mirrored armies") {
  const ScenarioConfig s;
  const WorldState w = build_world(s, Mode::TurnBased, 42);
  CHECK(is_rotation_invariant(w.terrain));
  CHECK(units_of(w, 0).size() == 3);
  CHECK(units_of(w, 1).size() == 3);
  CHECK(w.active_side == 0);
  CHECK(w.factions[0].initial_soldiers == 300);
  for (const EntityId id : units_of(w, 0)) {
    const HexCoord mirrored = rotate_180(w.registry.require<Position>(id).at, 15, 15);
    const auto other = unit_at(w, mirrored);
    REQUIRE(other);
    CHECK(w.registry.require<FactionTag>(*other).side == 1);
    CHECK(w.registry.require<UnitStats>(*other).type == w.registry.require<UnitStats>(id).type);
  }
  const WorldState rt = build_world(s, Mode::RealTime, 42);
  CHECK_FALSE(rt.active_side);
}

TEST_CASE("snapshot digest") {
  const ScenarioConfig s;
  WorldState w = build_world(s, Mode::TurnBased, 7);
  const WorldState copy = w;
  const std::string d = snapshot_digest(w);
  CHECK(d.size() == 64);
  CHECK(d == snapshot_digest(copy));
  CHECK(d == snapshot_digest(build_world(s, Mode::TurnBased, 7)));

  const EntityId id = units_of(w, 0).front();
  auto& pos = w.registry.require<Position>(id);
  pos.at.col += 1;
  CHECK(snapshot_digest(w) != d);
  pos.at.col -= 1;
  CHECK(snapshot_digest(w) == d);
  w.turn_number = 2;
  CHECK(snapshot_digest(w) != d);
  w.turn_number = 1;
  w.terrain.set_owner({5, 5}, 0);
  CHECK(snapshot_digest(w) != d);
}

TEST_CASE("scenario file overrides defaults") {
  const ScenarioConfig base;
  nlohmann::json j = base;
  j["horizon_turns"] = 12;
  j["factions"] = {"wu", "shu"};
  const auto back = j.get<ScenarioConfig>();
  CHECK(back.horizon_turns == 12);
  CHECK(back.factions[0] == "wu");
  CHECK(back.unit(UnitType::Cavalry).attack == 85);
  const auto partial = nlohmann::json{{"horizon_ms", 1000}}.get<ScenarioConfig>();
  CHECK(partial.horizon_ms == 1000);
  CHECK(partial.horizon_turns == 100);
}

TEST_CASE("system schedule runs in registration order") {
  SystemSchedule s;
  std::string trace;
  s.add("a", [&](WorldState&) { trace += "a"; });
  s.add("b", [&](WorldState&) { trace += "b"; });
  WorldState w;
  s.run(w);
  CHECK(trace == "ab");
  CHECK(s.names() == std::vector<std::string>{"a", "b"});
}
