#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace star {

struct RatingParams {
  double k = 32.0;
  double xi = 400.0;
  double alpha = 0.5;  // weight of the winner's surviving fraction
  double beta = 0.5;   // weight of the speed term
  double initial = 1000.0;
};

// 1 / (1 + 10^((r_b - r_a) / xi)).
double expected_score(double r_a, double r_b, double xi);

// Standard ELO step. s_a must be 0, 0.5 or 1 (InvalidScore otherwise). The
// rating sum is preserved.
std::pair<double, double> update_ser(double r_a, double r_b, double s_a, double k, double xi);

// 1 + alpha * u + beta * (1 - min(t_game / t_max, 1)).
double performance_multiplier(double u, double t_game, double t_max, double alpha, double beta);

struct MatchOutcomeRecord {
  std::string a;
  std::string b;
  double s_a = 0.5;
  double u = 0.0;  // winner's surviving fraction
  double t_game = 0.0;
  double t_max = 1.0;
  std::string mode = "turn";

  nlohmann::json to_json() const;
  static MatchOutcomeRecord from_json(const nlohmann::json& doc);
};

// Multiplier for a decided game; draws use 1.
double outcome_multiplier(const MatchOutcomeRecord& o, const RatingParams& p);

// ELO step with both deltas scaled by the winner's multiplier.
std::pair<double, double> update_pwer(double r_a, double r_b, const MatchOutcomeRecord& o,
                                      const RatingParams& p);

struct Ratings {
  std::map<std::string, double> ser;
  std::map<std::string, double> pwer;
};

// One pass over the stream in the given order, everyone starting at p.initial.
Ratings sequential_ratings(const std::vector<std::string>& players,
                           const std::vector<MatchOutcomeRecord>& stream, const RatingParams& p);

struct LeaderboardRow {
  std::string player;
  double pwer = 0.0;
  double pwer_sd = 0.0;
  double ser = 0.0;
  double ser_sd = 0.0;
  double win_rate = 0.0;
  int games = 0;
  int wins = 0;
  int draws = 0;
  int losses = 0;
};

struct Leaderboard {
  std::vector<LeaderboardRow> rows;  // PWER descending, then SER, then name
  int orderings = 0;

  nlohmann::json to_json() const;
  std::string render_table() const;
};

// Ratings are the mean over n_orderings shuffles of the stream (±: their
// standard deviation). Shuffles come in antithetic pairs, a random order and
// its reverse, so symmetric streams give exactly symmetric ratings.
// Throws StarError(InsufficientPlayers) with fewer than two players.
Leaderboard run_tournament(const std::vector<std::string>& players,
                           const std::vector<MatchOutcomeRecord>& stream, const RatingParams& params,
                           int n_orderings, std::uint64_t seed);

// Players in first-appearance order.
std::vector<std::string> players_in(const std::vector<MatchOutcomeRecord>& stream);

std::vector<MatchOutcomeRecord> read_outcomes(const std::string& path);
void write_outcomes(const std::string& path, const std::vector<MatchOutcomeRecord>& stream);

}  // namespace star
