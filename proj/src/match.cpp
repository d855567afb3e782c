#include "star/match.hpp"

#include <chrono>
#include <stdexcept>

#include "star/digest.hpp"

namespace star {

using nlohmann::json;

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

void register_both(ActionExecutor& ex, Agent& red, Agent& blue) {
  const std::array<Agent*, 2> agents = {&red, &blue};
  for (int side = 0; side < 2; ++side) {
    const auto r = ex.register_agent({{"faction", ex.world().factions[side].name},
                                      {"agent_id", ex.world().factions[side].name + "_" + agents[side]->name()},
                                      {"model_id", "scripted:" + agents[side]->name()}});
    if (!r.ok) throw std::logic_error("registration failed: " + r.message);
  }
}

// One decision: observe, decide, run the batch until the first failure.
void decide_and_act(ActionExecutor& ex, Agent& agent, int side) {
  const ActionResult obs = ex.execute(
      side, {ActionKind::Observation, {{"observation_level", to_string(agent.observation_level())}}});
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<ActionRequest> batch;
  if (obs.ok) batch = agent.decide(obs.detail);
  ex.log().append({{"type", "decision"},
                   {"side", side},
                   {"latency_ms", elapsed_ms(t0)},
                   {"batch_size", batch.size()}});
  for (const auto& req : batch) {
    const ActionResult r = ex.execute(side, req);
    if (!r.ok || ex.finished()) break;
    if (ex.world().mode == Mode::TurnBased && ex.world().active_side != side) break;
  }
  ex.drain_events();
}

MatchRecord finish(ActionExecutor& ex, const MatchConfig& config) {
  MatchRecord rec;
  rec.outcome = *ex.world().outcome;
  rec.final_digest = snapshot_digest(ex.world());
  json stats = json::array();
  for (int side = 0; side < 2; ++side) {
    rec.stats[side] = compute_stats(ex.log(), side);
    json s = rec.stats[side].to_json();
    s["side"] = side;
    s["faction"] = ex.world().factions[side].name;
    s["agent_id"] = ex.agent(side) ? ex.agent(side)->agent_id : "";
    s["counters"] = ex.counters(side).to_json();
    const auto quality = ex.strategic_quality(side);
    s["strategic_quality"] = quality ? json(*quality) : json(nullptr);
    s["llm_stats"] = ex.llm_stats(side);
    stats.push_back(s);
  }
  rec.summary = {{"type", "summary"},
                 {"outcome", outcome_to_json(ex.world(), rec.outcome)},
                 {"final_digest", rec.final_digest},
                 {"turn_number", ex.world().turn_number},
                 {"clock_ms", ex.world().clock_ms},
                 {"t_max", config.mode == Mode::TurnBased ? config.scenario.horizon_turns
                                                          : config.scenario.horizon_ms},
                 {"stats", stats},
                 {"telemetry", ex.telemetry()}};
  ex.log().append(rec.summary);
  rec.log = ex.log();
  return rec;
}

void append_config(ActionExecutor& ex, const MatchConfig& config, Agent& red, Agent& blue) {
  json c = to_json(config);
  c["type"] = "config";
  c["agents"] = {red.name(), blue.name()};
  ex.log().append(c);
}

bool same(const json& a, const json& b) { return a == b; }

}  // namespace

json to_json(const MatchConfig& c) {
  json out = {{"mode", to_string(c.mode)},
              {"seed", c.seed},
              {"locks", c.locks},
              {"max_decisions_per_turn", c.max_decisions_per_turn},
              {"decision_interval_ms", c.decision_interval_ms}};
  out["turn_budget_ms"] = c.turn_budget_ms ? json(*c.turn_budget_ms) : json(nullptr);
  return out;
}

json GameStats::to_json() const {
  return {{"total_calls", total_calls},
          {"failed_calls", failed_calls},
          {"spatial_failed_calls", spatial_failed_calls},
          {"actions_per_game", actions_per_game},
          {"tce", tce},
          {"sae", sae},
          {"mean_latency_ms", mean_latency_ms},
          {"latency_samples", latency_samples}};
}

GameStats compute_stats(const ReplayLog& log, int side) {
  GameStats s;
  std::map<std::int64_t, std::string> actions;
  double latency = 0.0;
  for (const auto& r : log.records()) {
    const std::string type = r.value("type", std::string{});
    if (r.value("side", -1) != side) continue;
    if (type == "request") {
      const json& req = r.at("request");
      actions[r.at("index").get<std::int64_t>()] =
          req.is_object() && req.contains("action") && req["action"].is_string() ? req["action"].get<std::string>()
                                                                                  : std::string{};
    } else if (type == "result") {
      const json& res = r.at("result");
      ++s.total_calls;
      if (!res.at("ok").get<bool>()) {
        ++s.failed_calls;
        if (res.value("spatial", false)) ++s.spatial_failed_calls;
      } else {
        const auto kind = action_from_string(actions[r.at("index").get<std::int64_t>()]);
        if (kind && is_gameplay(*kind)) ++s.actions_per_game;
      }
    } else if (type == "decision") {
      latency += r.value("latency_ms", 0.0);
      ++s.latency_samples;
    }
  }
  s.tce = s.total_calls ? static_cast<double>(s.failed_calls) / s.total_calls : 0.0;
  s.sae = s.failed_calls ? static_cast<double>(s.spatial_failed_calls) / s.failed_calls : 0.0;
  s.mean_latency_ms = s.latency_samples ? latency / s.latency_samples : 0.0;
  return s;
}

MatchRecord run_turn_based(Agent& red, Agent& blue, const MatchConfig& config) {
  ActionExecutor ex(config.scenario, Mode::TurnBased, config.seed, config.locks);
  append_config(ex, config, red, blue);
  register_both(ex, red, blue);
  const std::array<Agent*, 2> agents = {&red, &blue};
  ex.start();
  ex.drain_events();

  while (!ex.finished()) {
    const int side = ex.world().active_side.value();
    const auto turn_start = std::chrono::steady_clock::now();
    int decisions = 0;
    while (!ex.finished() && ex.world().active_side == side) {
      if (decisions >= config.max_decisions_per_turn) {
        ex.log().append({{"type", "forced_end_turn"}, {"side", side}, {"t_sim", ex.world().turn_number}});
        if (!ex.execute(side, end_turn_request(ex.world().factions[side].name)).ok) {
          ex.forfeit(side, "StuckTurn");
        }
        ex.drain_events();
        break;
      }
      decide_and_act(ex, *agents[side], side);
      ++decisions;
      if (config.turn_budget_ms && elapsed_ms(turn_start) > static_cast<double>(*config.turn_budget_ms) &&
          !ex.finished()) {
        ex.forfeit(side, to_string(ErrorCode::AgentTimeout).data());
      }
    }
  }
  return finish(ex, config);
}

MatchRecord run_real_time(Agent& red, Agent& blue, const MatchConfig& config) {
  ActionExecutor ex(config.scenario, Mode::RealTime, config.seed, config.locks);
  append_config(ex, config, red, blue);
  register_both(ex, red, blue);
  const std::array<Agent*, 2> agents = {&red, &blue};
  ex.start();
  ex.drain_events();

  std::array<std::int64_t, 2> next_decision = {0, 0};
  std::int64_t ticks = 0;
  while (!ex.finished()) {
    // Alternate who moves first within a tick so neither side always leads.
    const int first = static_cast<int>(ticks % 2);
    for (const int side : {first, 1 - first}) {
      if (ex.finished() || ex.world().clock_ms < next_decision[side]) continue;
      decide_and_act(ex, *agents[side], side);
      next_decision[side] = ex.world().clock_ms + config.decision_interval_ms;
    }
    if (!ex.finished()) ex.tick();
    ex.drain_events();
    ++ticks;
  }
  return finish(ex, config);
}

MatchRecord run_match(Agent& red, Agent& blue, const MatchConfig& config) {
  return config.mode == Mode::TurnBased ? run_turn_based(red, blue, config) : run_real_time(red, blue, config);
}

ReplayReport verify_replay(const ReplayLog& log) {
  const auto& records = log.records();
  if (records.empty() || records.front().value("type", std::string{}) != "header") {
    throw std::runtime_error("record has no header");
  }
  const json& header = records.front();
  ScenarioConfig scenario = header.at("scenario").get<ScenarioConfig>();
  const auto mode = mode_from_string(header.at("mode").get<std::string>());
  if (!mode) throw std::runtime_error("unknown mode in header");
  const LockConstants locks = header.at("locks").get<LockConstants>();
  ActionExecutor ex(scenario, *mode, header.at("seed").get<std::uint64_t>(), locks);

  ReplayReport report;
  const auto mismatch = [&](std::size_t i, const std::string& what) {
    report.ok = false;
    report.message = "record " + std::to_string(i + 1) + ": " + what;
    report.final_digest = snapshot_digest(ex.world());
    return report;
  };
  if (header.contains("initial_digest") && header["initial_digest"] != snapshot_digest(ex.world())) {
    return mismatch(0, "initial world differs");
  }
  const auto catch_up = [&](const json& rec) {
    if (*mode == Mode::RealTime && rec.contains("t_sim")) ex.advance_to(rec["t_sim"].get<std::int64_t>());
  };

  std::optional<ActionResult> last;
  bool summary_seen = false;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const json& rec = records[i];
    const std::string type = rec.value("type", std::string{});
    ++report.records_checked;
    if (type == "register") {
      const ActionResult r = ex.register_agent(rec.at("params"));
      if (!same(r.to_json(), rec.at("result"))) return mismatch(i, "registration result differs");
    } else if (type == "request") {
      catch_up(rec);
      if (*mode == Mode::RealTime && rec.at("t_sim").get<std::int64_t>() != ex.world().clock_ms) {
        return mismatch(i, "clock differs");
      }
      if (rec.contains("checkpoint") && rec["checkpoint"] != snapshot_digest(ex.world())) {
        return mismatch(i, "checkpoint digest differs");
      }
      last = ex.submit(rec.at("side").get<int>(), rec.at("request"));
    } else if (type == "result") {
      if (!last) return mismatch(i, "result without request");
      if (!same(last->to_json(), rec.at("result"))) return mismatch(i, "result differs");
      last.reset();
    } else if (type == "forfeit") {
      catch_up(rec);
      ex.forfeit(rec.at("side").get<int>(), rec.value("reason", std::string{}));
    } else if (type == "summary") {
      if (*mode == Mode::RealTime) ex.advance_to(rec.at("clock_ms").get<std::int64_t>());
      const std::string digest = snapshot_digest(ex.world());
      if (digest != rec.at("final_digest").get<std::string>()) return mismatch(i, "final digest differs");
      if (!ex.world().outcome || outcome_to_json(ex.world(), *ex.world().outcome) != rec.at("outcome")) {
        return mismatch(i, "outcome differs");
      }
      summary_seen = true;
    }
  }
  if (!summary_seen) throw std::runtime_error("record has no summary");
  report.ok = true;
  report.final_digest = snapshot_digest(ex.world());
  report.message = "replay matches";
  return report;
}

}  // namespace star
