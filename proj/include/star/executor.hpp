#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "star/action.hpp"
#include "star/combat.hpp"
#include "star/locks.hpp"
#include "star/observation.hpp"
#include "star/replay.hpp"
#include "star/world.hpp"

namespace star {

struct AgentInfo {
  std::string agent_id;
  std::string model_id;
  std::string provider;
};

// total = ok + failed; spatial_failed <= failed; gameplay_ok counts
// successful unit actions and end_turn.
struct CallCounters {
  std::int64_t total = 0;
  std::int64_t ok = 0;
  std::int64_t failed = 0;
  std::int64_t spatial_failed = 0;
  std::int64_t gameplay_ok = 0;

  nlohmann::json to_json() const;
  friend bool operator==(const CallCounters&, const CallCounters&) = default;
};

// Layered validation for a unit action, in order: map bounds; unit existence,
// ownership, turn and busy state; required components; action-specific checks
// (path cost, range, targets, AP). Returns the first failure, if any.
std::optional<ActionResult> validate(const WorldState& world, const Rules& rules, int side,
                                     const ActionRequest& request);

// Routes requests from registered agents to the rules, keeps per-side call
// counters, and appends every request and result to the replay log. Owns the
// world; one thread drives it.
class ActionExecutor {
 public:
  ActionExecutor(const ScenarioConfig& scenario, Mode mode, std::uint64_t seed,
                 LockConstants locks = {});
  // Wraps a prepared world (fixtures). Writes no header.
  ActionExecutor(WorldState world, const ScenarioConfig& scenario, LockConstants locks = {});

  const WorldState& world() const { return world_; }
  WorldState& mutable_world() { return world_; }
  const Rules& rules() const { return rules_; }
  const LockConstants& locks() const { return locks_; }
  const ReplayLog& log() const { return log_; }
  ReplayLog& log() { return log_; }
  const CallCounters& counters(int side) const { return counters_.at(side); }

  // Binds an agent to a faction. Params: faction, agent_id, model_id.
  ActionResult register_agent(const nlohmann::json& params);
  bool registered(int side) const { return agents_.at(side).has_value(); }
  const std::optional<AgentInfo>& agent(int side) const { return agents_.at(side); }

  // Parses, gates, validates and runs one raw request document on behalf of
  // `side`. Never throws for agent mistakes.
  ActionResult submit(int side, const nlohmann::json& raw);
  ActionResult execute(int side, const ActionRequest& request) {
    return submit(side, request.to_json());
  }

  // Real-time: advance the simulated clock tick by tick up to `ms`.
  void advance_to(std::int64_t ms);
  void tick();

  // Ends the match with `side` losing (timeouts, dropped sessions).
  void forfeit(int side, std::string reason);

  bool finished() const { return world_.outcome.has_value(); }

  // Events raised since the last drain, in emission order.
  std::vector<nlohmann::json> drain_events();

  // Clamped strategy_ping scores and raw report_llm_stats payloads.
  const nlohmann::json& telemetry() const { return telemetry_; }
  std::optional<double> strategic_quality(int side) const;
  nlohmann::json llm_stats(int side) const;

  // Records the match start: turn_start for the first side in turn-based play.
  void start();

  // Checkpoint spacing in log records.
  static constexpr std::size_t kCheckpointEvery = 20;

 private:
  ActionResult dispatch(int side, const ActionRequest& request, int& lock_cost);
  ActionResult run_move(int side, const ActionRequest& request, int& path_cost);
  ActionResult run_observation(int side, const ActionRequest& request);
  ActionResult run_faction_state(int side, const ActionRequest& request);
  ActionResult run_end_turn(int side, const ActionRequest& request);
  ActionResult run_ping(int side, const ActionRequest& request);
  ActionResult run_llm_stats(int side, const ActionRequest& request);
  void settle_outcome();
  void emit(std::string event, nlohmann::json detail);
  nlohmann::json sim_time() const;

  ScenarioConfig scenario_;
  Rules rules_;
  LockConstants locks_;
  WorldState world_;
  ReplayLog log_;
  std::array<std::optional<AgentInfo>, 2> agents_;
  std::array<CallCounters, 2> counters_;
  std::vector<nlohmann::json> pending_events_;
  nlohmann::json telemetry_ = nlohmann::json::array();
  std::array<nlohmann::json, 2> llm_stats_;
  std::size_t next_checkpoint_ = 0;
  std::int64_t request_index_ = 0;
};

nlohmann::json outcome_to_json(const WorldState& world, const Outcome& outcome);

}  // namespace star
