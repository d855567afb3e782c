#include "doctest.h"
#include "fixtures.hpp"
#include "star/combat.hpp"
#include "star/rng.hpp"

using namespace star;
using namespace star::testing;

namespace {

struct Duel {
  ScenarioConfig scenario;
  WorldState world;
  EntityId attacker = kInvalidEntity;
  EntityId defender = kInvalidEntity;
};

// Attacker at (1,1) on Plain, defender adjacent at (2,1) on the given glyph.
Duel duel(UnitType a, UnitType d, char defender_glyph = 'P', int attacker_count = 100, int fort = 0) {
  Duel out;
  std::vector<std::string> rows = open_field(5, 4);
  rows[1][2] = defender_glyph;
  out.world = blank_world(rows, Mode::TurnBased, out.scenario);
  out.attacker = spawn_unit(out.world, 0, a, {1, 1}, out.scenario);
  out.defender = spawn_unit(out.world, 1, d, {2, 1}, out.scenario);
  out.world.registry.require<UnitCount>(out.attacker).current = attacker_count;
  out.world.terrain.set_owner({2, 1}, 1);
  out.world.terrain.set_fortification({2, 1}, fort);
  seal(out.world);
  return out;
}

}  // namespace

TEST_CASE("effectiveness curve") {
  const auto values = read_fixture("rating_values.json");
  CHECK(effectiveness(0.0) == 0.0);
  CHECK(effectiveness(1.0) == 1.0);
  CHECK(effectiveness(0.3) == doctest::Approx(values["sigma_0_3"].get<double>()).epsilon(1e-12));
  CHECK(effectiveness(0.95) == doctest::Approx(values["sigma_0_95"].get<double>()).epsilon(1e-12));
  double prev = 0.0;
  for (int i = 0; i <= 1000; ++i) {
    const double x = i / 1000.0;
    const double s = effectiveness(x);
    CHECK(s >= prev);
    if (i > 0 && i < 1000) CHECK(s < x);
    prev = s;
  }
  CHECK_THROWS_AS(effectiveness(-0.01), StarError);
  CHECK_THROWS_AS(effectiveness(1.01), StarError);
  CHECK_THROWS_AS(effectiveness(std::nan("")), StarError);
}

TEST_CASE("effective attack") {
  CHECK(effective_attack({85, 1.0, 1.0, 1.0, 0.0}) == 85.0);
  CHECK(effective_attack({85, 0.95, 1.0, 1.0, 0.0}) == doctest::Approx(78.73125));
  CHECK(effective_attack({85, 0.7, 0.0, 1.0, 0.0}) == 0.0);
  CHECK(effective_attack({85, 0.0, 1.0, 1.0, 0.0}) == 0.0);
}

TEST_CASE("defense stacking is capped") {
  CHECK(effective_defense(30, 0.3, 0.0, 0.8) == doctest::Approx(39.0));
  CHECK(effective_defense(70, 0.5, 0.45, 0.8) == doctest::Approx(126.0));
  CHECK(effective_defense(70, 0.4, 0.15, 0.8) == doctest::Approx(108.5));
  CHECK(casualties_for(85, 30) == 65);
  CHECK(casualties_for(0, 30) == 0);
}

TEST_CASE("combat matches golden fixtures") {
  for (const auto& fx : read_fixture("combat_golden.json")) {
    CAPTURE(fx["name"].get<std::string>());
    const auto a = *unit_type_from_string(fx["attacker"].get<std::string>());
    const auto d = *unit_type_from_string(fx["defender"].get<std::string>());
    const char glyph = fx["terrain"].get<std::string>()[0];
    if (fx.contains("error")) {
      try {
        duel(a, d, glyph, fx["attacker_count"].get<int>(), fx["fortification"].get<int>());
        FAIL("defender placed on impassable terrain");
      } catch (const StarError& e) {
        CHECK(to_string(e.code()) == fx["error"].get<std::string>());
      }
      continue;
    }
    Duel x = duel(a, d, glyph, fx["attacker_count"].get<int>(), fx["fortification"].get<int>());
    Rules rules(x.scenario);
    const BattleReport r = rules.resolve_combat(x.world, x.attacker, x.defender);
    CHECK(r.attack_effective == doctest::Approx(fx["attack_effective"].get<double>()).epsilon(1e-12));
    CHECK(r.defense_effective == doctest::Approx(fx["defense_effective"].get<double>()).epsilon(1e-12));
    CHECK(r.damage_dealt == fx["casualties"].get<int>());
    CHECK(r.defender_count_after == 100 - fx["casualties"].get<int>());
    CHECK(x.world.registry.require<ActionPoints>(x.attacker).current == 1);
  }
}

TEST_CASE("combat is monotone in attack and terrain") {
  Rng rng(3);
  for (int i = 0; i < 2'000; ++i) {
    const double a = rng.uniform_int(1, 150);
    const double r = rng.uniform01();
    const double def = rng.uniform_int(10, 100);
    const double t1 = rng.uniform_int(0, 5) / 10.0;
    const double t2 = t1 + rng.uniform_int(0, 5) / 10.0;
    const double a_lo = effective_attack({a, r, 1.0, 1.0, 0.0});
    const double a_hi = effective_attack({a + rng.uniform_int(0, 50), r, 1.0, 1.0, 0.0});
    CHECK(casualties_for(a_hi, effective_defense(def, t1, 0, 0.8)) >=
          casualties_for(a_lo, effective_defense(def, t1, 0, 0.8)));
    CHECK(casualties_for(a_lo, effective_defense(def, t2, 0, 0.8)) <=
          casualties_for(a_lo, effective_defense(def, t1, 0, 0.8)));
  }
}

TEST_CASE("resolve_combat preconditions") {
  Duel x = duel(UnitType::Infantry, UnitType::Archer);
  Rules rules(x.scenario);
  const EntityId friend_id = spawn_unit(x.world, 0, UnitType::Archer, {0, 1}, x.scenario);
  const EntityId far_enemy = spawn_unit(x.world, 1, UnitType::Infantry, {4, 1}, x.scenario);
  const auto code = [&](EntityId a, EntityId d) {
    try {
      rules.resolve_combat(x.world, a, d);
    } catch (const StarError& e) {
      return e.code();
    }
    return ErrorCode::GameOver;  // sentinel: no error
  };
  CHECK(code(x.attacker, friend_id) == ErrorCode::FriendlyFire);
  CHECK(code(x.attacker, far_enemy) == ErrorCode::OutOfRange);
  CHECK(code(x.attacker, 999) == ErrorCode::DeadTarget);
  CHECK(code(x.attacker, x.defender) == ErrorCode::GameOver);
  CHECK(code(x.attacker, x.defender) == ErrorCode::GameOver);
  CHECK(code(x.attacker, x.defender) == ErrorCode::InsufficientAP);
}

TEST_CASE("identical inputs give identical reports") {
  Duel a = duel(UnitType::Cavalry, UnitType::Infantry, 'F');
  Duel b = duel(UnitType::Cavalry, UnitType::Infantry, 'F');
  Rules rules(a.scenario);
  const auto ra = to_json(rules.resolve_combat(a.world, a.attacker, a.defender));
  const auto rb = to_json(rules.resolve_combat(b.world, b.attacker, b.defender));
  CHECK(ra == rb);
  CHECK(a.world == b.world);
}

TEST_CASE("a kill destroys the defender and boosts the victor") {
  Duel x = duel(UnitType::Cavalry, UnitType::Archer);
  x.world.registry.require<UnitCount>(x.defender).current = 10;
  Rules rules(x.scenario);
  const BattleReport r = rules.resolve_combat(x.world, x.attacker, x.defender);
  CHECK(r.defender_destroyed);
  CHECK(r.defender_count_after == 0);
  CHECK_FALSE(x.world.registry.alive(x.defender));
  CHECK(x.world.registry.require<StatusEffects>(x.attacker).active.contains(Status::MoraleBoost));
  // Morale boost scales the next strike by 1.2.
  const EntityId next = spawn_unit(x.world, 1, UnitType::Archer, {2, 1}, x.scenario);
  const BattleReport boosted = rules.resolve_combat(x.world, x.attacker, next);
  CHECK(boosted.attack_effective == doctest::Approx(85 * 1.2));
}

TEST_CASE("apply_move") {
  ScenarioConfig s;
  WorldState w = blank_world({"PPPPPP", "PFPPPP", "PPPPPP"}, Mode::TurnBased, s);
  const EntityId cav = spawn_unit(w, 0, UnitType::Cavalry, {0, 0}, s);
  const EntityId blocker = spawn_unit(w, 1, UnitType::Infantry, {3, 0}, s);
  seal(w);
  Rules rules(s);
  const auto path = find_path({0, 0}, {2, 0}, 6, 3, rules.movement_cost(w), 5);
  REQUIRE(path);
  CHECK(rules.apply_move(w, cav, *path) == 5 - path->total_cost);
  CHECK(w.registry.require<Position>(cav).at == HexCoord{2, 0});

  const auto code = [&](const Path& p) {
    try {
      rules.apply_move(w, cav, p);
    } catch (const StarError& e) {
      return e.code();
    }
    return ErrorCode::GameOver;
  };
  CHECK(code(Path{{{3, 0}}, 1}) == ErrorCode::Blocked);
  CHECK(code(Path{{{2, 2}}, 1}) == ErrorCode::InvalidTarget);
  w.registry.require<MovementPoints>(cav).current = 0;
  CHECK(code(Path{{{2, 1}}, 1}) == ErrorCode::InsufficientMP);
  w.registry.require<MovementPoints>(cav).current = 5;
  w.registry.require<StatusEffects>(cav).active[Status::Confusion] = 1;
  CHECK(code(Path{{{2, 1}}, 1}) == ErrorCode::StatusForbids);
  (void)blocker;
}

TEST_CASE("support actions") {
  ScenarioConfig s;
  WorldState w = blank_world({"PCPPP", "PPWPP", "PPPPP"}, Mode::TurnBased, s);
  const EntityId inf = spawn_unit(w, 0, UnitType::Infantry, {1, 1}, s);
  const EntityId enemy = spawn_unit(w, 1, UnitType::Cavalry, {3, 1}, s);
  seal(w);
  Rules rules(s);
  const auto code = [&](SupportKind k, EntityId u, SupportArgs a) {
    try {
      rules.apply_support_action(w, k, u, a);
    } catch (const StarError& e) {
      return e.code();
    }
    return ErrorCode::GameOver;
  };

  SUBCASE("occupy and fortify") {
    const auto occ = rules.apply_support_action(w, SupportKind::Occupy, inf, {HexCoord{1, 0}, {}, {}});
    CHECK(occ["previous_owner"] == "neutral");
    CHECK(w.terrain.owner({1, 0}) == 0);
    CHECK(w.registry.require<ActionPoints>(inf).current == 1);
    CHECK(code(SupportKind::Occupy, inf, {HexCoord{1, 0}, {}, {}}) == ErrorCode::AlreadyOwned);
    CHECK(code(SupportKind::Occupy, inf, {HexCoord{2, 1}, {}, {}}) == ErrorCode::ImpassableTile);
    CHECK(code(SupportKind::Fortify, inf, {HexCoord{2, 1}, {}, {}}) == ErrorCode::TerrainForbidsConstruction);
    CHECK(code(SupportKind::Fortify, inf, {HexCoord{0, 1}, {}, {}}) == ErrorCode::NotOwned);
    const auto fort = rules.apply_support_action(w, SupportKind::Fortify, inf, {HexCoord{1, 0}, {}, {}});
    CHECK(fort["fortification_level"] == 1);
    CHECK(w.factions[0].construction_points == 4);
    CHECK(w.registry.require<ActionPoints>(inf).current == 0);
    CHECK(code(SupportKind::Fortify, inf, {HexCoord{1, 0}, {}, {}}) == ErrorCode::InsufficientAP);
    w.registry.require<ActionPoints>(inf).current = 2;
    w.terrain.set_fortification({1, 0}, 3);
    CHECK(code(SupportKind::Fortify, inf, {HexCoord{1, 0}, {}, {}}) == ErrorCode::MaxFortification);
    w.terrain.set_fortification({1, 0}, 0);
    w.factions[0].construction_points = 0;
    CHECK(code(SupportKind::Fortify, inf, {HexCoord{1, 0}, {}, {}}) == ErrorCode::InsufficientCP);
  }

  SUBCASE("occupying an enemy tile clears its fortification") {
    w.terrain.set_owner({0, 1}, 1);
    w.terrain.set_fortification({0, 1}, 2);
    rules.apply_support_action(w, SupportKind::Occupy, inf, {HexCoord{0, 1}, {}, {}});
    CHECK(w.terrain.fortification({0, 1}) == 0);
  }

  SUBCASE("rest") {
    w.registry.require<ActionPoints>(inf).current = 1;
    w.registry.require<StatusEffects>(inf).active[Status::Fatigue] = -1;
    const auto r = rules.apply_support_action(w, SupportKind::Rest, inf, {});
    CHECK(r["relieved_status"] == "FATIGUE");
    CHECK(w.registry.require<ActionPoints>(inf).current == 2);
    CHECK(w.registry.require<MovementPoints>(inf).current == 0);
    CHECK(code(SupportKind::Rest, inf, {}) == ErrorCode::UnitResting);
  }

  SUBCASE("skills") {
    CHECK(code(SupportKind::Skill, inf, {{}, "teleport", enemy}) == ErrorCode::UnknownSkill);
    CHECK(code(SupportKind::Skill, inf, {{}, "ambush", enemy}) == ErrorCode::OutOfRange);
    const auto fire = rules.apply_support_action(w, SupportKind::Skill, inf, {{}, "fire_attack", enemy});
    CHECK(fire["applied_status"] == "FATIGUE");
    CHECK(w.registry.require<StatusEffects>(enemy).active.contains(Status::Fatigue));
    CHECK(code(SupportKind::Skill, inf, {{}, "fire_attack", enemy}) == ErrorCode::SkillOnCooldown);
    // Cooldown of 3 turns survives two refreshes of the caster's side.
    for (int i = 0; i < 2; ++i) {
      rules.end_turn_refresh(w, 0);
      rules.end_turn_refresh(w, 1);
      CHECK(code(SupportKind::Skill, inf, {{}, "fire_attack", enemy}) == ErrorCode::SkillOnCooldown);
    }
    w.registry.require<Position>(enemy).at = {2, 0};
    rules.apply_support_action(w, SupportKind::Skill, inf, {{}, "ambush", enemy});
    CHECK(w.registry.require<StatusEffects>(enemy).active.contains(Status::Confusion));
    CHECK(w.registry.require<SkillState>(inf).skill_points == 0);
  }
}

TEST_CASE("end_turn_refresh") {
  ScenarioConfig s;
  WorldState w = blank_world(open_field(6, 6), Mode::TurnBased, s);
  const EntityId a = spawn_unit(w, 0, UnitType::Cavalry, {0, 0}, s);
  const EntityId b = spawn_unit(w, 1, UnitType::Infantry, {5, 5}, s);
  seal(w);
  Rules rules(s);
  w.registry.require<ActionPoints>(a).current = 0;
  w.registry.require<MovementPoints>(a).current = 1;
  w.registry.require<StatusEffects>(a).active[Status::Confusion] = 1;
  CHECK_THROWS_AS(rules.end_turn_refresh(w, 1), StarError);
  rules.end_turn_refresh(w, 0);
  CHECK(w.active_side == 1);
  CHECK(w.turn_number == 1);
  rules.end_turn_refresh(w, 1);
  CHECK(w.turn_number == 2);
  CHECK(w.registry.require<ActionPoints>(a).current == 2);
  CHECK(w.registry.require<MovementPoints>(a).current == 5);
  CHECK_FALSE(w.registry.require<StatusEffects>(a).active.contains(Status::Confusion));
  (void)b;

  WorldState rt = blank_world(open_field(6, 6), Mode::RealTime, s);
  try {
    rules.end_turn_refresh(rt, 0);
    FAIL("refresh accepted in real time");
  } catch (const StarError& e) {
    CHECK(e.code() == ErrorCode::NotInThisMode);
  }
}

TEST_CASE("owned cities pay income at refresh") {
  ScenarioConfig s;
  WorldState w = blank_world({"CPC", "PPP", "PPP"}, Mode::TurnBased, s);
  spawn_unit(w, 0, UnitType::Infantry, {1, 1}, s);
  spawn_unit(w, 1, UnitType::Infantry, {2, 2}, s);
  seal(w);
  w.terrain.set_owner({0, 0}, 0);
  w.terrain.set_owner({2, 0}, 0);
  Rules rules(s);
  const int mp = w.factions[0].manpower;
  rules.end_turn_refresh(w, 0);
  CHECK(w.factions[0].manpower == mp + 2 * s.rules.city_manpower_per_turn);
}

TEST_CASE("check_victory") {
  ScenarioConfig s;
  s.horizon_turns = 100;
  WorldState w = blank_world(open_field(6, 6), Mode::TurnBased, s);
  const EntityId a = spawn_unit(w, 0, UnitType::Infantry, {0, 0}, s);
  const EntityId b = spawn_unit(w, 1, UnitType::Infantry, {5, 5}, s);
  seal(w);
  Rules rules(s);
  CHECK_FALSE(rules.check_victory(w));

  SUBCASE("elimination") {
    w.registry.destroy(b);
    const auto o = rules.check_victory(w);
    REQUIRE(o);
    CHECK(o->winner == 0);
    CHECK(o->reason == TerminalReason::Elimination);
    CHECK(o->surviving_fraction == 1.0);
  }
  SUBCASE("horizon with a stronger side") {
    w.turn_number = 101;
    w.registry.require<UnitCount>(a).current = 60;
    w.registry.require<UnitCount>(b).current = 40;
    const auto o = rules.check_victory(w);
    REQUIRE(o);
    CHECK(o->winner == 0);
    CHECK(o->reason == TerminalReason::Horizon);
    CHECK(o->surviving_fraction == doctest::Approx(0.6));
    CHECK(o->duration == 100);
  }
  SUBCASE("horizon with equal fractions") {
    w.turn_number = 101;
    const auto o = rules.check_victory(w);
    REQUIRE(o);
    CHECK_FALSE(o->winner);
  }
  SUBCASE("forfeit") {
    w.factions[1].forfeited = true;
    CHECK(rules.check_victory(w)->winner == 0);
    CHECK(rules.check_victory(w)->reason == TerminalReason::Forfeit);
  }
}
