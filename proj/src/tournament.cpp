#include "star/tournament.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace star {

MatchOutcomeRecord outcome_record(const MatchRecord& match, const std::string& red, const std::string& blue,
                                  const MatchConfig& config) {
  MatchOutcomeRecord o;
  o.a = red;
  o.b = blue;
  o.s_a = !match.outcome.winner ? 0.5 : (*match.outcome.winner == 0 ? 1.0 : 0.0);
  o.u = match.outcome.winner ? match.outcome.surviving_fraction : 0.0;
  o.t_game = static_cast<double>(match.outcome.duration);
  o.t_max = static_cast<double>(config.mode == Mode::TurnBased ? config.scenario.horizon_turns
                                                               : config.scenario.horizon_ms);
  o.mode = std::string(to_string(config.mode));
  return o;
}

std::vector<TournamentGame> run_round_robin(const TournamentConfig& config) {
  std::vector<TournamentGame> games;
  const Rng root(config.seed);
  for (std::size_t i = 0; i < config.players.size(); ++i) {
    for (std::size_t j = i + 1; j < config.players.size(); ++j) {
      for (int g = 0; g < config.games_per_pair; ++g) {
        TournamentGame game;
        game.first = i;
        game.second = j;
        game.game = g;
        game.first_is_red = g % 2 == 0;
        game.match_seed =
            root.split("game/" + std::to_string(i) + "/" + std::to_string(j) + "/" + std::to_string(g)).next_u64();
        games.push_back(game);
      }
    }
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t k = next++; k < games.size(); k = next++) {
      try {
        TournamentGame& game = games[k];
        const AgentProfile& p1 = config.players[game.first];
        const AgentProfile& p2 = config.players[game.second];
        // Each game gets fresh agents whose seeds mix in the game seed.
        const auto agent_for = [&](const AgentProfile& p) {
          return make_agent({p.policy, splitmix64(p.seed ^ game.match_seed)});
        };
        auto a1 = agent_for(p1);
        auto a2 = agent_for(p2);
        MatchConfig mc = config.match;
        mc.seed = game.match_seed;
        const MatchRecord rec = game.first_is_red ? run_match(*a1, *a2, mc) : run_match(*a2, *a1, mc);
        game.outcome = game.first_is_red ? outcome_record(rec, p1.label(), p2.label(), mc)
                                         : outcome_record(rec, p2.label(), p1.label(), mc);
        game.final_digest = rec.final_digest;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return games;
}

}  // namespace star
