#include "star/agents.hpp"

#include <algorithm>
#include <charconv>
#include <climits>
#include <stdexcept>

namespace star {

using nlohmann::json;

namespace {

HexCoord coord_of(const json& doc) { return {doc.at("col").get<int>(), doc.at("row").get<int>()}; }

int band_rank(const std::string& band) {
  if (band == "low") return 0;
  if (band == "medium") return 1;
  return 2;
}

// Occupancy as the policy imagines it while building one batch.
class Planner {
 public:
  explicit Planner(const ObservationView& view) : view_(view) {
    for (const auto& u : view.own) occupied_.insert(u.at);
    for (const auto& e : view.enemies) occupied_.insert(e.at);
  }

  bool free(HexCoord c) const { return !occupied_.contains(c); }

  void relocate(HexCoord from, HexCoord to) {
    occupied_.erase(from);
    occupied_.insert(to);
  }

  EntryCost cost(std::optional<HexCoord> goal = std::nullopt) const {
    return [this, goal](HexCoord c) -> std::optional<int> {
      if (!view_.contains(c)) return std::nullopt;
      if (occupied_.contains(c) && c != goal) return std::nullopt;
      return terrain_info(view_.at(c)).move_cost;
    };
  }

  std::vector<std::pair<HexCoord, int>> reachable(HexCoord from, int mp) const {
    return reachable_cells(from, view_.width, view_.height, cost(), mp);
  }

  // Furthest affordable step along the cheapest path toward `goal`. The goal
  // itself may be occupied (an enemy); the walk stops short of it.
  std::optional<HexCoord> advance(HexCoord from, HexCoord goal, int mp) const {
    const auto path = find_path(from, goal, view_.width, view_.height, cost(goal), INT_MAX / 4);
    if (!path) return std::nullopt;
    std::optional<HexCoord> dest;
    int spent = 0;
    for (const HexCoord step : path->steps) {
      if (step == goal && occupied_.contains(step)) break;
      spent += *terrain_info(view_.at(step)).move_cost;
      if (spent > mp) break;
      dest = step;
    }
    return dest;
  }

 private:
  const ObservationView& view_;
  std::set<HexCoord> occupied_;
};

const ObservedEnemy* nearest_enemy(const ObservationView& v, HexCoord from) {
  const ObservedEnemy* best = nullptr;
  int best_d = INT_MAX;
  for (const auto& e : v.enemies) {
    const int d = hex_distance(from, e.at);
    if (d < best_d || (d == best_d && e.id < best->id)) {
      best = &e;
      best_d = d;
    }
  }
  return best;
}

int nearest_enemy_distance(const ObservationView& v, HexCoord from) {
  const ObservedEnemy* e = nearest_enemy(v, from);
  return e ? hex_distance(from, e->at) : INT_MAX;
}

// Weakest-looking enemy within `range` of `from`; archers before others at
// equal band.
const ObservedEnemy* focus_target(const ObservationView& v, HexCoord from, int range) {
  const ObservedEnemy* best = nullptr;
  auto key = [&](const ObservedEnemy& e) {
    return std::tuple(band_rank(e.band), e.type == UnitType::Archer ? 0 : 1, hex_distance(from, e.at), e.id);
  };
  for (const auto& e : v.enemies) {
    if (hex_distance(from, e.at) > range) continue;
    if (!best || key(e) < key(*best)) best = &e;
  }
  return best;
}

HexCoord center_of(const ObservationView& v) { return {v.width / 2, v.height / 2}; }

void remember_starts(std::map<EntityId, HexCoord>& start, const ObservationView& v) {
  for (const auto& u : v.own) start.try_emplace(u.id, u.at);
}

// Exploration target when no enemy is in sight: the centre first, then the
// mirror image of the unit's own start tile (where the enemy deployed).
HexCoord explore_goal(const ObservationView& v, const ObservedUnit& u,
                      const std::map<EntityId, HexCoord>& start) {
  const HexCoord center = center_of(v);
  if (hex_distance(u.at, center) > 1) return center;
  const auto it = start.find(u.id);
  const HexCoord origin = it == start.end() ? u.at : it->second;
  return {v.width - 1 - origin.col, v.height - 1 - origin.row};
}

}  // namespace

ObservationView ObservationView::parse(const json& doc) {
  ObservationView v;
  v.faction = doc.at("faction").get<std::string>();
  const json& info = doc.at("strategic_info");
  v.real_time = info.value("mode", std::string("turn")) == "real";
  v.turn_number = info.value("turn_number", 0);
  v.clock_ms = info.value("clock_ms", std::int64_t{0});
  const json& map = doc.at("map");
  v.width = map.at("width").get<int>();
  v.height = map.at("height").get<int>();
  v.terrain.reserve(static_cast<std::size_t>(v.width * v.height));
  for (const auto& row : map.at("terrain")) {
    for (const char g : row.get<std::string>()) {
      const auto t = terrain_from_glyph(g);
      if (!t) throw std::invalid_argument("bad terrain glyph in observation");
      v.terrain.push_back(*t);
    }
  }
  if (v.terrain.size() != static_cast<std::size_t>(v.width * v.height)) {
    throw std::invalid_argument("observation map size mismatch");
  }

  for (const auto& u : doc.at("own_units")) {
    ObservedUnit o;
    o.id = u.at("id").get<EntityId>();
    o.type = unit_type_from_string(u.at("type").get<std::string>()).value_or(UnitType::Infantry);
    o.at = coord_of(u.at("position"));
    o.count = u.at("unit_count").at("current").get<int>();
    o.count_max = u.at("unit_count").at("max").get<int>();
    if (u.contains("movement")) o.mp = u["movement"].at("current").get<int>();
    if (u.contains("action_points")) o.ap = u["action_points"].at("current").get<int>();
    if (u.contains("combat")) o.attack_range = u["combat"].value("attack_range", 1);
    o.rested = u.value("rested", false);
    if (u.contains("status_effects")) o.confused = u["status_effects"].contains("CONFUSION");
    o.locked_until_ms = u.value("locked_until_ms", std::int64_t{0});
    if (u.contains("reachable_tiles")) {
      for (const auto& r : u["reachable_tiles"]) {
        o.reachable.emplace_back(coord_of(r.at("position")), r.at("cost").get<int>());
      }
    }
    if (u.contains("enemies_in_range")) {
      o.enemies_in_range = u["enemies_in_range"].get<std::vector<EntityId>>();
    }
    v.own.push_back(std::move(o));
  }
  for (const auto& e : doc.at("known_enemy_units")) {
    v.enemies.push_back({e.at("id").get<EntityId>(),
                         unit_type_from_string(e.at("type").get<std::string>()).value_or(UnitType::Infantry),
                         coord_of(e.at("position")), e.at("estimate_count").get<std::string>()});
  }
  return v;
}

bool ObservationView::can_act(const ObservedUnit& u) const {
  if (real_time) return u.locked_until_ms <= clock_ms;
  return u.ap > 0 && !u.rested;
}

AgentProfile parse_profile(const std::string& text) {
  AgentProfile p;
  const auto colon = text.find(':');
  p.policy = text.substr(0, colon);
  if (p.policy != "random" && p.policy != "greedy" && p.policy != "kiting") {
    throw std::invalid_argument("unknown policy '" + p.policy + "' (random, greedy, kiting)");
  }
  if (colon != std::string::npos) {
    const std::string seed = text.substr(colon + 1);
    const auto [ptr, ec] = std::from_chars(seed.data(), seed.data() + seed.size(), p.seed);
    if (ec != std::errc{} || ptr != seed.data() + seed.size() || seed.empty()) {
      throw std::invalid_argument("bad seed in profile '" + text + "'");
    }
  }
  return p;
}

std::unique_ptr<Agent> make_agent(const AgentProfile& profile) {
  if (profile.policy == "random") return std::make_unique<RandomAgent>(profile.seed);
  if (profile.policy == "greedy") return std::make_unique<GreedyAgent>();
  if (profile.policy == "kiting") return std::make_unique<KitingAgent>();
  throw std::invalid_argument("unknown policy " + profile.policy);
}

ActionRequest move_request(EntityId unit, HexCoord to) {
  return {ActionKind::Move, {{"unit_id", unit}, {"target_position", coord_to_json(to)}}};
}

ActionRequest attack_request(EntityId unit, EntityId target) {
  return {ActionKind::Attack, {{"unit_id", unit}, {"target_id", target}}};
}

ActionRequest end_turn_request(const std::string& faction) {
  return {ActionKind::EndTurn, {{"faction", faction}}};
}

std::vector<ActionRequest> RandomAgent::decide(const json& observation) {
  const ObservationView v = ObservationView::parse(observation);
  Planner plan(v);
  std::vector<ActionRequest> out;
  for (const auto& u : v.own) {
    if (!v.can_act(u)) continue;
    if (!u.enemies_in_range.empty() && rng_.chance(0.5)) {
      out.push_back(attack_request(u.id, u.enemies_in_range[rng_.below(u.enemies_in_range.size())]));
      continue;
    }
    if (u.confused || u.reachable.empty() || !rng_.chance(0.7)) continue;
    const auto& [to, cost] = u.reachable[rng_.below(u.reachable.size())];
    if (!plan.free(to)) continue;
    out.push_back(move_request(u.id, to));
    plan.relocate(u.at, to);
  }
  if (!v.real_time) out.push_back(end_turn_request(v.faction));
  return out;
}

std::vector<ActionRequest> GreedyAgent::decide(const json& observation) {
  const ObservationView v = ObservationView::parse(observation);
  remember_starts(start_, v);
  Planner plan(v);
  std::vector<ActionRequest> out;
  for (const auto& u : v.own) {
    if (!v.can_act(u)) continue;
    const ObservedEnemy* target = nearest_enemy(v, u.at);
    if (target && hex_distance(u.at, target->at) <= u.attack_range) {
      out.push_back(attack_request(u.id, target->id));
      continue;
    }
    if (u.confused) continue;
    const HexCoord goal = target ? target->at : explore_goal(v, u, start_);
    const auto dest = plan.advance(u.at, goal, u.mp);
    if (!dest) continue;
    out.push_back(move_request(u.id, *dest));
    plan.relocate(u.at, *dest);
    if (target && hex_distance(*dest, target->at) <= u.attack_range) {
      out.push_back(attack_request(u.id, target->id));
    }
  }
  if (!v.real_time) out.push_back(end_turn_request(v.faction));
  return out;
}

std::vector<ActionRequest> KitingAgent::decide(const json& observation) {
  const ObservationView v = ObservationView::parse(observation);
  remember_starts(start_, v);
  Planner plan(v);
  std::vector<ActionRequest> out;

  // Archers act first so the screen forms on their final positions.
  std::vector<ObservedUnit> order = v.own;
  std::stable_sort(order.begin(), order.end(), [](const ObservedUnit& a, const ObservedUnit& b) {
    return (a.type == UnitType::Archer) > (b.type == UnitType::Archer);
  });
  std::map<EntityId, HexCoord> planned;
  for (const auto& u : order) planned[u.id] = u.at;

  const auto move_to = [&](const ObservedUnit& u, HexCoord to) {
    out.push_back(move_request(u.id, to));
    plan.relocate(planned[u.id], to);
    planned[u.id] = to;
  };
  // Best reachable tile by `score` (higher wins), ties to cheaper then lower
  // coordinate.
  const auto best_tile = [&](const ObservedUnit& u, auto score) -> std::optional<HexCoord> {
    std::optional<HexCoord> best;
    double best_score = 0.0;
    int best_cost = 0;
    for (const auto& [c, cost] : plan.reachable(u.at, u.mp)) {
      const double s = score(c);
      if (!best || s > best_score || (s == best_score && cost < best_cost)) {
        best = c;
        best_score = s;
        best_cost = cost;
      }
    }
    return best;
  };
  const auto defense = [&](HexCoord c) { return terrain_info(v.at(c)).defense_bonus; };
  const int attacks_per_unit = v.real_time ? 1 : 2;

  for (const auto& u : order) {
    if (!v.can_act(u)) continue;
    const double health = u.count_max > 0 ? static_cast<double>(u.count) / u.count_max : 0.0;
    const ObservedEnemy* nearest = nearest_enemy(v, u.at);

    if (health < 0.3) {
      // Withdraw from the closest threat; no attack.
      if (!nearest || u.confused) continue;
      const HexCoord home = start_.contains(u.id) ? start_[u.id] : u.at;
      const auto dest = best_tile(u, [&](HexCoord c) {
        return 10.0 * std::min(nearest_enemy_distance(v, c), 6) - hex_distance(c, home) + defense(c);
      });
      if (dest && nearest_enemy_distance(v, *dest) > nearest_enemy_distance(v, u.at)) move_to(u, *dest);
      continue;
    }

    const int shots = std::min(attacks_per_unit, v.real_time ? 1 : u.ap);
    if (u.attack_range >= 2) {
      if (const ObservedEnemy* t = focus_target(v, u.at, u.attack_range)) {
        for (int i = 0; i < shots; ++i) out.push_back(attack_request(u.id, t->id));
        if (u.confused) continue;
        // Step back out of melee reach while staying in bow range.
        if (nearest_enemy_distance(v, u.at) <= 1) {
          const auto dest = best_tile(u, [&](HexCoord c) {
            const int d = nearest_enemy_distance(v, c);
            return (d >= 2 ? 10.0 : 0.0) + (d <= u.attack_range ? 5.0 : 0.0) + defense(c);
          });
          if (dest && nearest_enemy_distance(v, *dest) >= 2) move_to(u, *dest);
        }
        continue;
      }
      if (u.confused) continue;
      if (nearest) {
        // Close to exactly bow range, then shoot.
        const auto dest = best_tile(u, [&](HexCoord c) {
          const int d = nearest_enemy_distance(v, c);
          return (d == u.attack_range ? 10.0 : 0.0) - std::abs(d - u.attack_range) + defense(c);
        });
        if (dest && nearest_enemy_distance(v, *dest) == u.attack_range) {
          move_to(u, *dest);
          if (const ObservedEnemy* t = focus_target(v, *dest, u.attack_range)) {
            for (int i = 0; i < shots; ++i) out.push_back(attack_request(u.id, t->id));
          }
          continue;
        }
      }
      const auto dest = plan.advance(u.at, nearest ? nearest->at : explore_goal(v, u, start_), u.mp);
      if (dest) move_to(u, *dest);
      continue;
    }

    // Melee: hit what is in reach first.
    if (const ObservedEnemy* t = focus_target(v, u.at, u.attack_range)) {
      for (int i = 0; i < shots; ++i) out.push_back(attack_request(u.id, t->id));
      continue;
    }
    if (u.confused) continue;

    std::optional<HexCoord> dest;
    if (u.type == UnitType::Infantry) {
      // Screen the most threatened archer: stand on its line to the enemy.
      std::optional<std::pair<HexCoord, HexCoord>> threat;
      int threat_d = INT_MAX;
      for (const auto& a : order) {
        if (a.type != UnitType::Archer) continue;
        const HexCoord at = planned[a.id];
        const ObservedEnemy* e = nearest_enemy(v, at);
        if (!e) continue;
        const int d = hex_distance(at, e->at);
        if (d <= 4 && d < threat_d) {
          threat = std::pair(at, e->at);
          threat_d = d;
        }
      }
      if (threat) {
        const auto line = hex_line(threat->first, threat->second);
        const std::set<HexCoord> on_line(line.begin() + 1, line.end() - 1);
        dest = best_tile(u, [&](HexCoord c) {
          return (on_line.contains(c) ? 100.0 : 0.0) - hex_distance(c, threat->second);
        });
        if (dest && !on_line.contains(*dest)) dest.reset();
      }
    }
    if (!dest) dest = plan.advance(u.at, nearest ? nearest->at : explore_goal(v, u, start_), u.mp);
    if (!dest) continue;
    move_to(u, *dest);
    if (const ObservedEnemy* t = focus_target(v, *dest, u.attack_range)) {
      for (int i = 0; i < shots; ++i) out.push_back(attack_request(u.id, t->id));
    }
  }
  if (!v.real_time) out.push_back(end_turn_request(v.faction));
  return out;
}

}  // namespace star
