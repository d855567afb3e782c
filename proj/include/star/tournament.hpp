#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "star/agents.hpp"
#include "star/match.hpp"
#include "star/rating.hpp"

namespace star {

// Rating record for a finished match between `red` (side 0) and `blue`.
MatchOutcomeRecord outcome_record(const MatchRecord& match, const std::string& red, const std::string& blue,
                                  const MatchConfig& config);

struct TournamentConfig {
  std::vector<AgentProfile> players;
  int games_per_pair = 2;
  std::uint64_t seed = 0;
  MatchConfig match;  // mode, scenario, locks; the seed is replaced per game
  int jobs = 1;
};

struct TournamentGame {
  std::size_t first = 0;   // player indices
  std::size_t second = 0;
  int game = 0;
  std::uint64_t match_seed = 0;
  bool first_is_red = true;
  MatchOutcomeRecord outcome;
  std::string final_digest;
};

// Every unordered pair plays games_per_pair matches, alternating sides. Game
// seeds derive from (seed, pair, game index), so results do not depend on
// jobs or completion order; the returned list is in (pair, game) order.
std::vector<TournamentGame> run_round_robin(const TournamentConfig& config);

}  // namespace star
