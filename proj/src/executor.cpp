#include "star/executor.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

#include "star/digest.hpp"

namespace star {

using nlohmann::json;

namespace {

EntityId unit_param(const json& params, const char* key = "unit_id") {
  const auto it = params.find(key);
  if (it == params.end()) throw StarError(ErrorCode::InvalidParams, std::string("missing ") + key);
  if (!it->is_number_integer() || it->get<std::int64_t>() < 0 ||
      it->get<std::int64_t>() > std::int64_t{UINT32_MAX}) {
    throw StarError(ErrorCode::InvalidParams, std::string(key) + " must be a non-negative integer");
  }
  return it->get<EntityId>();
}

std::optional<HexCoord> coord_param(const json& params, const char* key) {
  const auto it = params.find(key);
  if (it == params.end() || it->is_null()) return std::nullopt;
  return coord_from_json(*it);
}

void require_bounds(const WorldState& world, std::optional<HexCoord> c) {
  if (c && !world.terrain.contains(*c)) {
    throw StarError(ErrorCode::OutOfBounds,
                    "(" + std::to_string(c->col) + ", " + std::to_string(c->row) +
                        ") is outside the " + std::to_string(world.terrain.width()) + "x" +
                        std::to_string(world.terrain.height()) + " map");
  }
}

// Skill targets are a unit id or a tile holding one.
std::optional<HexCoord> skill_target_coord(const json& params) {
  const auto it = params.find("target");
  if (it == params.end() || !it->is_object()) return std::nullopt;
  return coord_from_json(*it);
}

template <class... Ts>
void require_components(const Registry& reg, EntityId id) {
  if (!reg.has<Ts...>(id)) throw StarError(ErrorCode::MissingComponent);
}

void check_not_resting(const Registry& reg, EntityId id) {
  if (const auto* flags = reg.get<TurnFlags>(id); flags && flags->rested) {
    throw StarError(ErrorCode::UnitResting, "unit is resting for the rest of this turn");
  }
}

void validate_or_throw(const WorldState& world, const Rules& rules, int side,
                       const ActionRequest& req) {
  const Registry& reg = world.registry;
  const json& p = req.params;
  const EntityId unit = unit_param(p);

  // Layer 1: map boundaries.
  switch (req.kind) {
    case ActionKind::Move: {
      const auto target = coord_param(p, "target_position");
      if (!target) throw StarError(ErrorCode::InvalidParams, "missing target_position");
      require_bounds(world, target);
      break;
    }
    case ActionKind::Occupy:
    case ActionKind::Fortify:
      require_bounds(world, coord_param(p, "position"));
      break;
    case ActionKind::Skill:
      require_bounds(world, skill_target_coord(p));
      break;
    default:
      break;
  }

  // Layer 2: unit ownership and turn permission.
  if (!reg.alive(unit)) throw StarError(ErrorCode::UnknownUnit, "no unit " + std::to_string(unit));
  const auto* tag = reg.get<FactionTag>(unit);
  if (!tag) throw StarError(ErrorCode::MissingComponent);
  if (tag->side != side) throw StarError(ErrorCode::NotYourUnit);
  if (world.mode == Mode::TurnBased && world.active_side != side) {
    throw StarError(ErrorCode::NotYourTurn);
  }
  if (world.mode == Mode::RealTime) {
    if (const auto* lock = reg.get<ActionLock>(unit); lock && lock->locked_until_ms > world.clock_ms) {
      throw StarError(ErrorCode::UnitBusy, "unit busy until " + std::to_string(lock->locked_until_ms) + " ms");
    }
  }

  // Layer 3: components the action needs.
  require_components<Position, UnitStats, UnitCount>(reg, unit);
  switch (req.kind) {
    case ActionKind::Move: require_components<MovementPoints>(reg, unit); break;
    case ActionKind::Rest: require_components<ActionPoints, StatusEffects, TurnFlags>(reg, unit); break;
    case ActionKind::Skill: require_components<ActionPoints, SkillState>(reg, unit); break;
    default: require_components<ActionPoints>(reg, unit); break;
  }

  // Layer 4: action-specific costs, ranges and targets.
  check_not_resting(reg, unit);
  const HexCoord here = reg.require<Position>(unit).at;
  if (req.kind == ActionKind::Move) {
    const HexCoord target = *coord_param(p, "target_position");
    if (const auto* st = reg.get<StatusEffects>(unit); st && st->active.contains(Status::Confusion)) {
      throw StarError(ErrorCode::StatusForbids, "unit is confused");
    }
    if (target == here) throw StarError(ErrorCode::InvalidTarget, "unit is already there");
    if (!terrain_info(world.terrain.at(target)).move_cost) {
      throw StarError(ErrorCode::ImpassableTile);
    }
    if (unit_at(world, target)) throw StarError(ErrorCode::OccupiedTile);
    const int mp = reg.require<MovementPoints>(unit).current;
    const EntryCost cost = rules.movement_cost(world);
    const int w = world.terrain.width();
    const int h = world.terrain.height();
    if (find_path(here, target, w, h, cost, mp)) return;
    if (find_path(here, target, w, h, cost, INT_MAX / 4)) {
      throw StarError(ErrorCode::InsufficientMP, "path costs more than the " + std::to_string(mp) + " MP left");
    }
    throw StarError(ErrorCode::Blocked, "no path to target");
  }
  if (req.kind == ActionKind::Attack) {
    const EntityId target = unit_param(p, "target_id");
    if (!reg.alive(target) || !reg.has<UnitCount, Position, FactionTag>(target) ||
        reg.require<UnitCount>(target).current <= 0) {
      throw StarError(ErrorCode::DeadTarget);
    }
    if (reg.require<FactionTag>(target).side == side) throw StarError(ErrorCode::FriendlyFire);
    const HexCoord there = reg.require<Position>(target).at;
    const int dist = hex_distance(here, there);
    if (dist > reg.require<UnitStats>(unit).attack_range) {
      throw StarError(ErrorCode::OutOfRange, "hex distance " + std::to_string(dist) + " exceeds attack range " +
                                                 std::to_string(reg.require<UnitStats>(unit).attack_range));
    }
    if (!visible_cells(world, side).contains(there)) {
      throw StarError(ErrorCode::InvalidTarget, "target not visible");
    }
    if (world.mode == Mode::TurnBased && reg.require<ActionPoints>(unit).current < 1) {
      throw StarError(ErrorCode::InsufficientAP);
    }
  }
}

}  // namespace

json CallCounters::to_json() const {
  return {{"total_calls", total},
          {"ok_calls", ok},
          {"failed_calls", failed},
          {"spatial_failed_calls", spatial_failed},
          {"gameplay_ok", gameplay_ok}};
}

std::optional<ActionResult> validate(const WorldState& world, const Rules& rules, int side,
                                     const ActionRequest& request) {
  if (!is_unit_action(request.kind)) return std::nullopt;
  try {
    validate_or_throw(world, rules, side, request);
  } catch (const StarError& e) {
    return ActionResult::failure(e.code(), e.what());
  }
  return std::nullopt;
}

json outcome_to_json(const WorldState& world, const Outcome& o) {
  return {{"winner", o.winner ? json(world.factions[*o.winner].name) : json(nullptr)},
          {"winner_side", o.winner ? json(*o.winner) : json(nullptr)},
          {"draw", !o.winner.has_value()},
          {"surviving_fraction", o.surviving_fraction},
          {"duration", o.duration},
          {"reason", to_string(o.reason)}};
}

ActionExecutor::ActionExecutor(const ScenarioConfig& scenario, Mode mode, std::uint64_t seed,
                               LockConstants locks)
    : scenario_(scenario), rules_(scenario), locks_(locks), world_(build_world(scenario, mode, seed)) {
  log_.append({{"type", "header"},
               {"version", 1},
               {"scenario", scenario_},
               {"mode", to_string(mode)},
               {"seed", seed},
               {"locks", locks_},
               {"initial_digest", snapshot_digest(world_)}});
}

ActionExecutor::ActionExecutor(WorldState world, const ScenarioConfig& scenario, LockConstants locks)
    : scenario_(scenario), rules_(scenario), locks_(locks), world_(std::move(world)) {}

json ActionExecutor::sim_time() const {
  return world_.mode == Mode::TurnBased ? json(world_.turn_number) : json(world_.clock_ms);
}

void ActionExecutor::emit(std::string event, json detail) {
  json e = {{"event", event}, {"detail", detail}, {"t_sim", sim_time()}};
  log_.append({{"type", "event"}, {"event", event}, {"detail", detail}, {"t_sim", sim_time()}});
  pending_events_.push_back(std::move(e));
}

std::vector<json> ActionExecutor::drain_events() {
  std::vector<json> out;
  out.swap(pending_events_);
  return out;
}

void ActionExecutor::start() {
  if (world_.mode == Mode::TurnBased) {
    const int side = world_.active_side.value_or(0);
    emit("turn_start", {{"faction", world_.factions[side].name}, {"turn_number", world_.turn_number}});
  } else {
    emit("state_update", {{"clock_ms", world_.clock_ms}, {"mode", "real"}});
  }
}

ActionResult ActionExecutor::register_agent(const json& params) {
  ActionResult result;
  try {
    if (!params.is_object() || !params.contains("faction") || !params["faction"].is_string()) {
      throw StarError(ErrorCode::InvalidParams, "register needs a faction name");
    }
    const std::string faction = params["faction"].get<std::string>();
    const auto side = side_by_name(world_, faction);
    if (!side) throw StarError(ErrorCode::UnknownFaction, "no faction " + faction);
    if (agents_[*side]) throw StarError(ErrorCode::FactionTaken, faction + " already has an agent");
    AgentInfo info{params.value("agent_id", faction + "_agent"), params.value("model_id", std::string{}),
                   params.value("provider", std::string{})};
    agents_[*side] = info;
    result = ActionResult::success({{"faction", faction},
                                    {"side", *side},
                                    {"agent_id", info.agent_id},
                                    {"model_id", info.model_id}});
  } catch (const StarError& e) {
    result = ActionResult::failure(e.code(), e.what());
  } catch (const json::exception& e) {
    result = ActionResult::failure(ErrorCode::InvalidParams, e.what());
  }
  log_.append({{"type", "register"}, {"params", params}, {"result", result.to_json()}});
  return result;
}

ActionResult ActionExecutor::submit(int side, const json& raw) {
  if (side != 0 && side != 1) throw std::invalid_argument("side must be 0 or 1");
  const std::int64_t index = request_index_++;
  json record = {{"type", "request"},
                 {"index", index},
                 {"side", side},
                 {"t_sim", sim_time()},
                 {"t_wall", wall_clock_ms()},
                 {"request", raw}};
  if (log_.size() >= next_checkpoint_) {
    record["checkpoint"] = snapshot_digest(world_);
    next_checkpoint_ = log_.size() + kCheckpointEvery;
  }
  log_.append(std::move(record));

  ActionResult result;
  std::optional<ActionKind> kind;
  int lock_cost = 0;
  std::vector<std::string> warnings;
  try {
    if (!agents_[side]) throw StarError(ErrorCode::NotRegistered, "register_agent_info must come first");
    const ActionRequest req = ActionRequest::parse(raw);
    kind = req.kind;
    const auto& known = known_params(req.kind);
    for (const auto& [key, _] : req.params.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) {
        warnings.push_back("ignored unknown parameter '" + key + "'");
      }
    }
    if (req.kind == ActionKind::RegisterAgentInfo) {
      throw StarError(ErrorCode::FactionTaken, "this session is already registered");
    }
    if (is_gameplay(req.kind) && world_.outcome) throw StarError(ErrorCode::GameOver);
    // Phase gate: off-turn gameplay never reaches validation.
    if (is_gameplay(req.kind) && world_.mode == Mode::TurnBased && world_.active_side != side) {
      throw StarError(ErrorCode::NotYourTurn, "it is " +
                                                  world_.factions[world_.active_side.value_or(0)].name +
                                                  "'s turn");
    }
    if (is_unit_action(req.kind)) validate_or_throw(world_, rules_, side, req);
    result = dispatch(side, req, lock_cost);
  } catch (const StarError& e) {
    result = ActionResult::failure(e.code(), e.what());
  } catch (const json::exception& e) {
    result = ActionResult::failure(ErrorCode::InvalidParams, e.what());
  }
  result.warnings.insert(result.warnings.begin(), warnings.begin(), warnings.end());

  CallCounters& c = counters_[side];
  ++c.total;
  if (result.ok) {
    ++c.ok;
    if (kind && is_gameplay(*kind)) ++c.gameplay_ok;
  } else {
    ++c.failed;
    if (result.spatial) ++c.spatial_failed;
  }

  if (result.ok && kind && is_unit_action(*kind) && world_.mode == Mode::RealTime) {
    const std::int64_t ms = action_lock_ms(*kind, lock_cost, locks_);
    const EntityId unit = result.detail.value("unit_id", kInvalidEntity);
    if (ms > 0 && world_.registry.alive(unit)) {
      world_.registry.emplace<ActionLock>(unit, ActionLock{world_.clock_ms + ms});
      result.detail["locked_until_ms"] = world_.clock_ms + ms;
    }
  }

  log_.append({{"type", "result"},
               {"index", index},
               {"side", side},
               {"t_sim", sim_time()},
               {"t_wall", wall_clock_ms()},
               {"result", result.to_json()}});
  if (result.ok && kind && is_gameplay(*kind)) settle_outcome();
  return result;
}

ActionResult ActionExecutor::dispatch(int side, const ActionRequest& req, int& lock_cost) {
  const json& p = req.params;
  switch (req.kind) {
    case ActionKind::Move: return run_move(side, req, lock_cost);
    case ActionKind::Attack: {
      const EntityId unit = unit_param(p);
      const BattleReport report = rules_.resolve_combat(world_, unit, unit_param(p, "target_id"));
      json detail = to_json(report);
      detail["unit_id"] = unit;
      return ActionResult::success(std::move(detail));
    }
    case ActionKind::Rest:
    case ActionKind::Occupy:
    case ActionKind::Fortify:
    case ActionKind::Skill: {
      const EntityId unit = unit_param(p);
      SupportArgs args;
      SupportKind kind = SupportKind::Rest;
      if (req.kind == ActionKind::Occupy || req.kind == ActionKind::Fortify) {
        kind = req.kind == ActionKind::Occupy ? SupportKind::Occupy : SupportKind::Fortify;
        args.position = coord_param(p, "position");
      } else if (req.kind == ActionKind::Skill) {
        kind = SupportKind::Skill;
        const auto name = p.find("skill_name");
        if (name == p.end() || !name->is_string()) throw StarError(ErrorCode::InvalidParams, "missing skill_name");
        args.skill_name = name->get<std::string>();
        if (const auto t = p.find("target"); t != p.end()) {
          if (t->is_number_integer()) {
            args.target_unit = unit_param(p, "target");
          } else if (t->is_object()) {
            const auto occupant = unit_at(world_, coord_from_json(*t));
            if (!occupant) throw StarError(ErrorCode::InvalidTarget, "no unit on target tile");
            args.target_unit = *occupant;
          } else {
            throw StarError(ErrorCode::InvalidParams, "target must be a unit id or {col, row}");
          }
        }
      }
      return ActionResult::success(rules_.apply_support_action(world_, kind, unit, args));
    }
    case ActionKind::Observation: return run_observation(side, req);
    case ActionKind::GetFactionState: return run_faction_state(side, req);
    case ActionKind::EndTurn: return run_end_turn(side, req);
    case ActionKind::GetActionList: return ActionResult::success({{"actions", action_catalog()}});
    case ActionKind::StrategyPing: return run_ping(side, req);
    case ActionKind::ReportLlmStats: return run_llm_stats(side, req);
    case ActionKind::RegisterAgentInfo: break;
  }
  throw StarError(ErrorCode::UnknownAction);
}

ActionResult ActionExecutor::run_move(int side, const ActionRequest& req, int& path_cost) {
  (void)side;
  const EntityId unit = unit_param(req.params);
  const HexCoord target = *coord_param(req.params, "target_position");
  const HexCoord from = world_.registry.require<Position>(unit).at;
  const int mp = world_.registry.require<MovementPoints>(unit).current;
  const auto path = find_path(from, target, world_.terrain.width(), world_.terrain.height(),
                              rules_.movement_cost(world_), mp);
  if (!path) throw StarError(ErrorCode::Blocked, "no path to target");
  const int remaining = rules_.apply_move(world_, unit, *path);
  path_cost = path->total_cost;
  json steps = json::array();
  for (const HexCoord c : path->steps) steps.push_back(coord_to_json(c));
  return ActionResult::success({{"unit_id", unit},
                                {"from", coord_to_json(from)},
                                {"to", coord_to_json(target)},
                                {"path", steps},
                                {"path_cost", path->total_cost},
                                {"remaining_mp", remaining}});
}

ActionResult ActionExecutor::run_observation(int side, const ActionRequest& req) {
  ObservationLevel level = ObservationLevel::Basic;
  if (const auto it = req.params.find("observation_level"); it != req.params.end() && !it->is_null()) {
    const auto parsed = it->is_string() ? observation_level_from_string(it->get<std::string>()) : std::nullopt;
    if (!parsed) throw StarError(ErrorCode::InvalidParams, "observation_level must be basic, detailed or tactical");
    level = *parsed;
  }
  json doc = build_observation(world_, rules_, side, level);
  if (req.params.contains("unit_id") && !req.params["unit_id"].is_null()) {
    const EntityId unit = unit_param(req.params);
    if (!world_.registry.alive(unit)) throw StarError(ErrorCode::UnknownUnit);
    const auto* tag = world_.registry.get<FactionTag>(unit);
    if (!tag || tag->side != side) throw StarError(ErrorCode::NotYourUnit);
    doc["unit"] = own_unit_record(world_, rules_, unit, level, visible_cells(world_, side));
  }
  return ActionResult::success(std::move(doc));
}

ActionResult ActionExecutor::run_faction_state(int side, const ActionRequest& req) {
  int who = side;
  if (const auto it = req.params.find("faction"); it != req.params.end() && !it->is_null()) {
    if (!it->is_string()) throw StarError(ErrorCode::InvalidParams, "faction must be a string");
    const auto found = side_by_name(world_, it->get<std::string>());
    if (!found) throw StarError(ErrorCode::UnknownFaction, "no faction " + it->get<std::string>());
    who = *found;
  }
  const int soldiers = soldiers_of(world_, who);
  std::string state = "active";
  if (world_.outcome) {
    if (!world_.outcome->winner) {
      state = "draw";
    } else if (*world_.outcome->winner == who) {
      state = "victory";
    } else {
      state = soldiers == 0 ? "eliminated" : "defeat";
    }
  } else if (soldiers == 0) {
    state = "eliminated";
  }

  json detail = {{"faction", world_.factions[who].name},
                 {"state", state},
                 {"turn_number", world_.turn_number}};
  if (world_.mode == Mode::TurnBased) detail["is_active_turn"] = world_.active_side == who;
  if (who == side) {
    json units = json::array();
    for (const EntityId id : units_of(world_, who)) {
      const auto& count = world_.registry.require<UnitCount>(id);
      units.push_back({{"id", id},
                       {"type", to_string(world_.registry.require<UnitStats>(id).type)},
                       {"position", coord_to_json(world_.registry.require<Position>(id).at)},
                       {"unit_count", {{"current", count.current}, {"max", count.max}}}});
    }
    detail["unit_count"] = units.size();
    detail["soldiers"] = soldiers;
    detail["units"] = units;
    detail["resources"] = {{"manpower", world_.factions[who].manpower},
                           {"supplies", world_.factions[who].supplies}};
    detail["construction_points"] = world_.factions[who].construction_points;
  } else {
    // The opponent's army is reported only as far as it is visible.
    const auto visible = visible_cells(world_, side);
    json units = json::array();
    for (const EntityId id : units_of(world_, who)) {
      const HexCoord at = world_.registry.require<Position>(id).at;
      if (!visible.contains(at)) continue;
      const auto& count = world_.registry.require<UnitCount>(id);
      units.push_back({{"id", id},
                       {"type", to_string(world_.registry.require<UnitStats>(id).type)},
                       {"position", coord_to_json(at)},
                       {"estimate_count", estimate_band(count.current, count.max)}});
    }
    detail["visible_units"] = units;
  }
  if (world_.outcome) detail["outcome"] = outcome_to_json(world_, *world_.outcome);
  return ActionResult::success(std::move(detail));
}

ActionResult ActionExecutor::run_end_turn(int side, const ActionRequest& req) {
  if (const auto it = req.params.find("faction"); it != req.params.end() && !it->is_null()) {
    if (!it->is_string() || it->get<std::string>() != world_.factions[side].name) {
      throw StarError(ErrorCode::InvalidParams, "faction does not match this session");
    }
  }
  const int turn = world_.turn_number;
  rules_.end_turn_refresh(world_, side);
  settle_outcome();
  const int next = world_.active_side.value_or(opponent(side));
  if (!world_.outcome) {
    emit("turn_start", {{"faction", world_.factions[next].name}, {"turn_number", world_.turn_number}});
    emit("state_update", {{"previous_faction", world_.factions[side].name},
                          {"active_faction", world_.factions[next].name},
                          {"turn_number", world_.turn_number}});
  }
  return ActionResult::success({{"ended_by", world_.factions[side].name},
                                {"ended_turn", turn},
                                {"next_faction", world_.factions[next].name},
                                {"turn_number", world_.turn_number}});
}

ActionResult ActionExecutor::run_ping(int side, const ActionRequest& req) {
  const auto it = req.params.find("score");
  if (it == req.params.end() || !it->is_number()) {
    throw StarError(ErrorCode::SchemaViolation, "strategy_ping needs a numeric score");
  }
  const double raw = it->get<double>();
  const double score = std::clamp(raw, 0.0, 1.0);
  ActionResult result = ActionResult::success({{"stored", true}, {"score", score}});
  if (score != raw) result.warnings.push_back("score clamped to [0, 1]");
  telemetry_.push_back({{"kind", "strategy_ping"},
                        {"side", side},
                        {"faction", world_.factions[side].name},
                        {"score", score},
                        {"raw_score", raw},
                        {"clamped", score != raw},
                        {"evidence", req.params.value("evidence", std::string{})},
                        {"t_sim", sim_time()}});
  return result;
}

ActionResult ActionExecutor::run_llm_stats(int side, const ActionRequest& req) {
  json payload = req.params;
  payload.erase("faction");
  llm_stats_[side] = payload;
  telemetry_.push_back({{"kind", "report_llm_stats"}, {"side", side}, {"payload", payload}, {"t_sim", sim_time()}});
  return ActionResult::success({{"stored", true}});
}

std::optional<double> ActionExecutor::strategic_quality(int side) const {
  double sum = 0.0;
  int n = 0;
  for (const auto& t : telemetry_) {
    if (t["kind"] == "strategy_ping" && t["side"] == side) {
      sum += t["score"].get<double>();
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / n;
}

json ActionExecutor::llm_stats(int side) const { return llm_stats_.at(side); }

void ActionExecutor::settle_outcome() {
  if (world_.outcome) return;
  if (auto o = rules_.check_victory(world_)) {
    world_.outcome = o;
    if (world_.mode == Mode::TurnBased) world_.active_side.reset();
    emit("game_end", outcome_to_json(world_, *o));
  }
}

void ActionExecutor::tick() {
  if (world_.mode != Mode::RealTime) throw StarError(ErrorCode::NotInThisMode, "clock ticks are real-time only");
  if (world_.outcome) return;
  world_.clock_ms += locks_.tick_ms;
  if (locks_.mp_regen_per_s > 0) {
    const std::int64_t period = std::max<std::int64_t>(1, std::llround(1000.0 / locks_.mp_regen_per_s));
    world_.regen_carry_ms += locks_.tick_ms;
    while (world_.regen_carry_ms >= period) {
      world_.regen_carry_ms -= period;
      for (const EntityId id : world_.registry.view<MovementPoints>()) {
        auto& mp = world_.registry.require<MovementPoints>(id);
        mp.current = std::min(mp.max, mp.current + 1);
      }
    }
  }
  const std::int64_t round = rules_.config().realtime_round_ms;
  if (round > 0 && world_.clock_ms % round == 0) {
    rules_.realtime_round(world_);
    emit("state_update", {{"clock_ms", world_.clock_ms}, {"round", world_.turn_number}});
  }
  settle_outcome();
}

void ActionExecutor::advance_to(std::int64_t ms) {
  while (!world_.outcome && world_.clock_ms + locks_.tick_ms <= ms) tick();
}

void ActionExecutor::forfeit(int side, std::string reason) {
  if (world_.outcome) return;
  world_.factions[side].forfeited = true;
  log_.append({{"type", "forfeit"}, {"side", side}, {"reason", reason}, {"t_sim", sim_time()}});
  settle_outcome();
}

}  // namespace star
