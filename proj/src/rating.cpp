#include "star/rating.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "star/errors.hpp"
#include "star/rng.hpp"

namespace star {

using nlohmann::json;

namespace {

void check_score(double s) {
  if (s != 0.0 && s != 0.5 && s != 1.0) {
    throw StarError(ErrorCode::InvalidScore, "score must be 0, 0.5 or 1");
  }
}

struct Summary {
  double mean = 0.0;
  double sd = 0.0;
};

// Sorted before summing so that equal multisets give bit-identical results.
Summary summarize(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  Summary s;
  if (xs.empty()) return s;
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double acc = 0.0;
    for (const double x : xs) acc += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(acc / static_cast<double>(xs.size() - 1));
  }
  return s;
}

}  // namespace

double expected_score(double r_a, double r_b, double xi) {
  if (!(xi > 0.0)) throw StarError(ErrorCode::DomainError, "xi must be positive");
  return 1.0 / (1.0 + std::pow(10.0, (r_b - r_a) / xi));
}

std::pair<double, double> update_ser(double r_a, double r_b, double s_a, double k, double xi) {
  check_score(s_a);
  const double delta = k * (s_a - expected_score(r_a, r_b, xi));
  return {r_a + delta, r_b - delta};
}

double performance_multiplier(double u, double t_game, double t_max, double alpha, double beta) {
  const double speed = t_max > 0.0 ? 1.0 - std::min(t_game / t_max, 1.0) : 0.0;
  return 1.0 + alpha * std::clamp(u, 0.0, 1.0) + beta * std::clamp(speed, 0.0, 1.0);
}

json MatchOutcomeRecord::to_json() const {
  return {{"a", a}, {"b", b}, {"s_a", s_a}, {"u", u}, {"t_game", t_game}, {"t_max", t_max}, {"mode", mode}};
}

MatchOutcomeRecord MatchOutcomeRecord::from_json(const json& doc) {
  MatchOutcomeRecord o;
  o.a = doc.at("a").get<std::string>();
  o.b = doc.at("b").get<std::string>();
  o.s_a = doc.at("s_a").get<double>();
  check_score(o.s_a);
  o.u = doc.value("u", 0.0);
  o.t_game = doc.value("t_game", 0.0);
  o.t_max = doc.value("t_max", 1.0);
  o.mode = doc.value("mode", std::string("turn"));
  return o;
}

double outcome_multiplier(const MatchOutcomeRecord& o, const RatingParams& p) {
  if (o.s_a == 0.5) return 1.0;
  return performance_multiplier(o.u, o.t_game, o.t_max, p.alpha, p.beta);
}

std::pair<double, double> update_pwer(double r_a, double r_b, const MatchOutcomeRecord& o,
                                      const RatingParams& p) {
  check_score(o.s_a);
  const double delta = p.k * outcome_multiplier(o, p) * (o.s_a - expected_score(r_a, r_b, p.xi));
  return {r_a + delta, r_b - delta};
}

Ratings sequential_ratings(const std::vector<std::string>& players,
                           const std::vector<MatchOutcomeRecord>& stream, const RatingParams& p) {
  Ratings r;
  for (const auto& name : players) {
    r.ser[name] = p.initial;
    r.pwer[name] = p.initial;
  }
  for (const auto& o : stream) {
    auto& sa = r.ser.at(o.a);
    auto& sb = r.ser.at(o.b);
    std::tie(sa, sb) = update_ser(sa, sb, o.s_a, p.k, p.xi);
    auto& pa = r.pwer.at(o.a);
    auto& pb = r.pwer.at(o.b);
    std::tie(pa, pb) = update_pwer(pa, pb, o, p);
  }
  return r;
}

std::vector<std::string> players_in(const std::vector<MatchOutcomeRecord>& stream) {
  std::vector<std::string> out;
  for (const auto& o : stream) {
    for (const auto* name : {&o.a, &o.b}) {
      if (std::find(out.begin(), out.end(), *name) == out.end()) out.push_back(*name);
    }
  }
  return out;
}

Leaderboard run_tournament(const std::vector<std::string>& players,
                           const std::vector<MatchOutcomeRecord>& stream, const RatingParams& params,
                           int n_orderings, std::uint64_t seed) {
  if (players.size() < 2) throw StarError(ErrorCode::InsufficientPlayers, "need at least two players");
  if (n_orderings < 1) throw std::invalid_argument("n_orderings must be positive");
  for (const auto& o : stream) {
    if (std::find(players.begin(), players.end(), o.a) == players.end() ||
        std::find(players.begin(), players.end(), o.b) == players.end()) {
      throw std::invalid_argument("outcome names a player outside the tournament");
    }
  }

  std::map<std::string, std::vector<double>> ser;
  std::map<std::string, std::vector<double>> pwer;
  Rng rng = Rng(seed).split("orderings");
  std::vector<MatchOutcomeRecord> order = stream;
  for (int i = 0; i < n_orderings; ++i) {
    if (i % 2 == 0) {
      order = stream;
      rng.shuffle(std::span(order));
    } else {
      std::reverse(order.begin(), order.end());
    }
    const Ratings r = sequential_ratings(players, order, params);
    for (const auto& name : players) {
      ser[name].push_back(r.ser.at(name));
      pwer[name].push_back(r.pwer.at(name));
    }
  }

  Leaderboard board;
  board.orderings = n_orderings;
  for (const auto& name : players) {
    LeaderboardRow row;
    row.player = name;
    const Summary s = summarize(ser[name]);
    const Summary w = summarize(pwer[name]);
    row.ser = s.mean;
    row.ser_sd = s.sd;
    row.pwer = w.mean;
    row.pwer_sd = w.sd;
    for (const auto& o : stream) {
      double score = 0.0;
      if (o.a == name) {
        score = o.s_a;
      } else if (o.b == name) {
        score = 1.0 - o.s_a;
      } else {
        continue;
      }
      ++row.games;
      if (score == 1.0) ++row.wins;
      if (score == 0.5) ++row.draws;
      if (score == 0.0) ++row.losses;
    }
    row.win_rate = row.games ? (row.wins + 0.5 * row.draws) / row.games : 0.0;
    board.rows.push_back(row);
  }
  std::sort(board.rows.begin(), board.rows.end(), [](const LeaderboardRow& a, const LeaderboardRow& b) {
    if (a.pwer != b.pwer) return a.pwer > b.pwer;
    if (a.ser != b.ser) return a.ser > b.ser;
    return a.player < b.player;
  });
  return board;
}

json Leaderboard::to_json() const {
  json rows_doc = json::array();
  int rank = 0;
  for (const auto& r : rows) {
    rows_doc.push_back({{"rank", ++rank},
                        {"player", r.player},
                        {"pwer", r.pwer},
                        {"pwer_sd", r.pwer_sd},
                        {"ser", r.ser},
                        {"ser_sd", r.ser_sd},
                        {"win_rate", r.win_rate},
                        {"games", r.games},
                        {"wins", r.wins},
                        {"draws", r.draws},
                        {"losses", r.losses}});
  }
  return {{"orderings", orderings}, {"rows", rows_doc}};
}

std::string Leaderboard::render_table() const {
  std::size_t width = 6;
  for (const auto& r : rows) width = std::max(width, r.player.size());
  std::ostringstream out;
  out << std::left << std::setw(5) << "Rank" << std::setw(static_cast<int>(width) + 2) << "Player"
      << std::setw(18) << "PWER" << std::setw(18) << "SER" << "Win Rate\n";
  int rank = 0;
  for (const auto& r : rows) {
    std::ostringstream pw;
    std::ostringstream se;
    pw << std::fixed << std::setprecision(1) << r.pwer << " ± " << r.pwer_sd;
    se << std::fixed << std::setprecision(1) << r.ser << " ± " << r.ser_sd;
    out << std::left << std::setw(5) << ++rank << std::setw(static_cast<int>(width) + 2) << r.player
        << std::setw(19) << pw.str() << std::setw(19) << se.str() << std::fixed << std::setprecision(2)
        << r.win_rate << '\n';
  }
  return out.str();
}

std::vector<MatchOutcomeRecord> read_outcomes(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<MatchOutcomeRecord> out;
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(MatchOutcomeRecord::from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error(path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

void write_outcomes(const std::string& path, const std::vector<MatchOutcomeRecord>& stream) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& o : stream) out << o.to_json().dump() << '\n';
}

}  // namespace star
