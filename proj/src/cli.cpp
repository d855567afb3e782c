#include "star/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "star/match.hpp"
#include "star/rating.hpp"
#include "star/tournament.hpp"
#include "star/ws_server.hpp"

namespace star {

using nlohmann::json;

namespace {

std::uint16_t default_port() {
  if (const char* env = std::getenv("STAR_PORT")) {
    try {
      const int p = std::stoi(env);
      if (p >= 0 && p <= 65535) return static_cast<std::uint16_t>(p);
    } catch (const std::exception&) {
    }
  }
  return 8765;
}

struct CommonMatchFlags {
  std::string mode = "turn";
  std::uint64_t seed = 0;
  std::string scenario;
  std::optional<int> horizon_turns;
  std::optional<std::int64_t> horizon_ms;

  void attach(CLI::App& cmd) {
    cmd.add_option("--mode", mode, "turn or real")->check(CLI::IsMember({"turn", "real"}));
    cmd.add_option("--seed", seed, "seed for every random stream");
    cmd.add_option("--scenario", scenario, "scenario JSON file")->check(CLI::ExistingFile);
    cmd.add_option("--horizon-turns", horizon_turns, "turn-based horizon H");
    cmd.add_option("--horizon-ms", horizon_ms, "real-time horizon in simulated ms");
  }

  MatchConfig config() const {
    MatchConfig c;
    c.mode = *mode_from_string(mode);
    c.seed = seed;
    if (!scenario.empty()) c.scenario = load_scenario(scenario);
    if (horizon_turns) c.scenario.horizon_turns = *horizon_turns;
    if (horizon_ms) c.scenario.horizon_ms = *horizon_ms;
    return c;
  }
};

json summary_line(const MatchRecord& rec) {
  return {{"outcome", rec.summary.at("outcome")},
          {"final_digest", rec.final_digest},
          {"stats", rec.summary.at("stats")}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"STAR hex wargame environment"};
  app.require_subcommand(1);

  // serve
  CommonMatchFlags serve_flags;
  std::string serve_host = "127.0.0.1";
  std::uint16_t serve_port = default_port();
  std::string serve_out;
  std::int64_t heartbeat_ms = 10'000;
  auto* serve = app.add_subcommand("serve", "host one match for two protocol agents");
  serve_flags.attach(*serve);
  serve->add_option("--host", serve_host, "listen address");
  serve->add_option("--port", serve_port, "listen port (0 picks one; default $STAR_PORT or 8765)");
  serve->add_option("--out", serve_out, "write the match record here");
  serve->add_option("--heartbeat-ms", heartbeat_ms, "heartbeat interval");

  // match
  CommonMatchFlags match_flags;
  std::string red = "greedy:1";
  std::string blue = "random:1";
  std::string match_out;
  auto* match = app.add_subcommand("match", "run one scripted match");
  match_flags.attach(*match);
  match->add_option("--red", red, "policy:seed for the first faction");
  match->add_option("--blue", blue, "policy:seed for the second faction");
  match->add_option("--out", match_out, "write the match record here");

  // tournament
  CommonMatchFlags tour_flags;
  std::string players;
  int games_per_pair = 2;
  int jobs = 1;
  std::string tour_out;
  auto* tournament = app.add_subcommand("tournament", "round-robin between scripted agents");
  tour_flags.attach(*tournament);
  tournament->add_option("--players", players, "comma-separated policy:seed list")->required();
  tournament->add_option("--games-per-pair", games_per_pair, "games per unordered pair")->check(CLI::PositiveNumber);
  tournament->add_option("--jobs", jobs, "parallel matches")->check(CLI::PositiveNumber);
  tournament->add_option("--out", tour_out, "outcome file (JSONL)")->required();

  // replay verify
  std::string replay_file;
  auto* replay = app.add_subcommand("replay", "replay tools");
  replay->require_subcommand(1);
  auto* verify = replay->add_subcommand("verify", "re-execute a match record and compare digests");
  verify->add_option("file", replay_file, "match record")->required();

  // rate
  std::string rate_in;
  std::string rate_out;
  RatingParams params;
  int orderings = 100;
  std::uint64_t rate_seed = 0;
  bool table = false;
  auto* rate = app.add_subcommand("rate", "leaderboard from an outcome file");
  rate->add_option("--in", rate_in, "outcome file (JSONL)")->required()->check(CLI::ExistingFile);
  rate->add_option("--out", rate_out, "leaderboard file (JSON)");
  rate->add_option("--alpha", params.alpha, "weight of surviving fraction")->check(CLI::NonNegativeNumber);
  rate->add_option("--beta", params.beta, "weight of speed")->check(CLI::NonNegativeNumber);
  rate->add_option("--k", params.k, "update coefficient")->check(CLI::PositiveNumber);
  rate->add_option("--xi", params.xi, "logistic scale")->check(CLI::PositiveNumber);
  rate->add_option("--orderings", orderings, "shuffles for the uncertainty estimate")->check(CLI::PositiveNumber);
  rate->add_option("--seed", rate_seed, "shuffle seed");
  rate->add_flag("--table", table, "print a text table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream er;
    app.exit(e, o, er);
    err << er.str() << o.str();
    return kExitUsage;
  }

  try {
    if (*serve) {
      ServerConfig config;
      config.match = serve_flags.config();
      config.heartbeat_ms = heartbeat_ms;
      WsServer server(config, serve_host, serve_port);
      err << "serving " << serve_flags.mode << " match on " << serve_host << ":" << server.port() << '\n';
      MatchRecord rec = server.run();
      if (!serve_out.empty()) rec.log.write_file(serve_out);
      out << json{{"final_digest", rec.final_digest}, {"outcome", rec.summary.at("outcome")}}.dump() << '\n';
      return kExitOk;
    }

    if (*match) {
      AgentProfile rp;
      AgentProfile bp;
      try {
        rp = parse_profile(red);
        bp = parse_profile(blue);
      } catch (const std::invalid_argument& e) {
        err << e.what() << '\n';
        return kExitUsage;
      }
      const MatchConfig config = match_flags.config();
      auto ra = make_agent(rp);
      auto ba = make_agent(bp);
      const MatchRecord rec = run_match(*ra, *ba, config);
      if (!match_out.empty()) rec.log.write_file(match_out);
      out << summary_line(rec).dump() << '\n';
      return kExitOk;
    }

    if (*tournament) {
      TournamentConfig config;
      std::stringstream list(players);
      std::string item;
      try {
        while (std::getline(list, item, ',')) {
          if (!item.empty()) config.players.push_back(parse_profile(item));
        }
      } catch (const std::invalid_argument& e) {
        err << e.what() << '\n';
        return kExitUsage;
      }
      for (std::size_t i = 0; i < config.players.size(); ++i) {
        for (std::size_t j = i + 1; j < config.players.size(); ++j) {
          if (config.players[i].label() == config.players[j].label()) {
            err << "duplicate player " << config.players[i].label() << '\n';
            return kExitUsage;
          }
        }
      }
      if (config.players.size() < 2) {
        err << "a tournament needs at least two players\n";
        return kExitUsage;
      }
      config.games_per_pair = games_per_pair;
      config.seed = tour_flags.seed;
      config.match = tour_flags.config();
      config.jobs = jobs;
      const auto games = run_round_robin(config);
      std::vector<MatchOutcomeRecord> outcomes;
      for (const auto& g : games) outcomes.push_back(g.outcome);
      write_outcomes(tour_out, outcomes);
      out << json{{"games", games.size()}, {"out", tour_out}}.dump() << '\n';
      return kExitOk;
    }

    if (*verify) {
      ReplayLog log;
      try {
        log = ReplayLog::read_file(replay_file);
      } catch (const std::exception& e) {
        err << e.what() << '\n';
        return kExitRuntime;
      }
      const ReplayReport report = verify_replay(log);
      out << json{{"ok", report.ok}, {"message", report.message}, {"final_digest", report.final_digest}}.dump()
          << '\n';
      if (!report.ok) {
        err << "replay mismatch: " << report.message << '\n';
        return kExitReplayMismatch;
      }
      return kExitOk;
    }

    if (*rate) {
      const auto stream = read_outcomes(rate_in);
      const Leaderboard board = run_tournament(players_in(stream), stream, params, orderings, rate_seed);
      if (!rate_out.empty()) {
        std::ofstream f(rate_out);
        if (!f) throw std::runtime_error("cannot write " + rate_out);
        f << board.to_json().dump(2) << '\n';
      }
      if (table) out << board.render_table();
      out << json{{"players", board.rows.size()}, {"leader", board.rows.front().player}}.dump() << '\n';
      return kExitOk;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace star
