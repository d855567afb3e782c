#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "star/agents.hpp"
#include "star/executor.hpp"
#include "star/locks.hpp"
#include "star/replay.hpp"
#include "star/scenario.hpp"
#include "star/world.hpp"

namespace star {

struct MatchConfig {
  Mode mode = Mode::TurnBased;
  std::uint64_t seed = 0;
  ScenarioConfig scenario;
  LockConstants locks;
  // Turn-based: batches per turn before the engine ends the turn itself.
  int max_decisions_per_turn = 8;
  // Turn-based: wall-clock deliberation budget per turn; unset is unlimited.
  std::optional<std::int64_t> turn_budget_ms;
  // Real-time: simulated milliseconds between an agent's decisions.
  std::int64_t decision_interval_ms = 500;
};

nlohmann::json to_json(const MatchConfig& c);

// Per-agent figures for one game. tce = failed / total, sae = spatial /
// failed (0 without failures), actions_per_game = successful gameplay calls.
struct GameStats {
  std::int64_t total_calls = 0;
  std::int64_t failed_calls = 0;
  std::int64_t spatial_failed_calls = 0;
  std::int64_t actions_per_game = 0;
  double tce = 0.0;
  double sae = 0.0;
  double mean_latency_ms = 0.0;
  std::int64_t latency_samples = 0;

  nlohmann::json to_json() const;
};

GameStats compute_stats(const ReplayLog& log, int side);

struct MatchRecord {
  ReplayLog log;
  Outcome outcome;
  std::string final_digest;
  std::array<GameStats, 2> stats;
  nlohmann::json summary;
};

MatchRecord run_turn_based(Agent& red, Agent& blue, const MatchConfig& config);
MatchRecord run_real_time(Agent& red, Agent& blue, const MatchConfig& config);
MatchRecord run_match(Agent& red, Agent& blue, const MatchConfig& config);

struct ReplayReport {
  bool ok = false;
  std::string message;
  std::string final_digest;
  std::size_t records_checked = 0;
};

// Rebuilds the world from the header, re-submits every request and compares
// results, checkpoints and the final digest. Throws std::runtime_error when
// the record is structurally unusable.
ReplayReport verify_replay(const ReplayLog& log);

}  // namespace star
