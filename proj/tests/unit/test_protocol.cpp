#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "star/action.hpp"
#include "star/digest.hpp"
#include "star/envelope.hpp"
#include "star/rng.hpp"
#include "star/server.hpp"

using namespace star;
using namespace star::testing;
using nlohmann::json;

namespace {

ErrorCode decode_error(std::string_view text) {
  try {
    decode_envelope(text);
  } catch (const StarError& e) {
    return e.code();
  }
  return ErrorCode::GameOver;  // sentinel: decoded fine
}

Envelope make(MsgType type, std::int64_t seq, json payload, std::string sender = "agent") {
  Envelope e;
  e.msg_type = type;
  e.sender = std::move(sender);
  e.receiver = "server";
  e.timestamp = 1'700'000'000'000 + seq;
  e.seq = seq;
  e.payload = std::move(payload);
  return e;
}

// Drives a GameServer directly and keeps what it sends per connection.
struct Harness {
  std::map<ConnectionId, std::vector<Envelope>> inbox;
  GameServer server;
  std::map<ConnectionId, std::int64_t> seq;
  std::int64_t now = 0;

  explicit Harness(ServerConfig cfg = {})
      : server(std::move(cfg), [this](ConnectionId id, std::string text) { inbox[id].push_back(decode_envelope(text)); }) {}

  void connect(ConnectionId id) { server.on_connect(id, now); }
  void send(ConnectionId id, MsgType type, json payload) {
    server.on_message(id, encode_envelope(make(type, ++seq[id], std::move(payload))), now);
  }
  void act(ConnectionId id, json actions) { send(id, MsgType::ActionRequest, {{"actions", std::move(actions)}}); }
  void join(ConnectionId id, int side) {
    connect(id);
    send(id, MsgType::Register,
         {{"faction", server.executor().world().factions[side].name},
          {"agent_id", "agent" + std::to_string(side)},
          {"model_id", "fixture"}});
  }

  std::vector<Envelope> of_type(ConnectionId id, MsgType t) const {
    std::vector<Envelope> out;
    if (!inbox.contains(id)) return out;
    for (const auto& e : inbox.at(id))
      if (e.msg_type == t) out.push_back(e);
    return out;
  }
  bool saw_event(ConnectionId id, const std::string& name) const {
    for (const auto& e : of_type(id, MsgType::Event))
      if (e.payload["event"] == name) return true;
    return false;
  }
  std::optional<std::string> last_error(ConnectionId id) const {
    const auto errs = of_type(id, MsgType::Error);
    if (errs.empty()) return std::nullopt;
    return errs.back().payload["code"].get<std::string>();
  }
  const Envelope& last(ConnectionId id) const { return inbox.at(id).back(); }
};

json random_json(Rng& rng, int depth) {
  switch (depth > 2 ? rng.below(4) : rng.below(7)) {
    case 0: return nullptr;
    case 1: return rng.chance(0.5);
    case 2: return rng.uniform_int(-1'000'000, 1'000'000);
    case 3: {
      std::string s;
      for (std::uint64_t i = 0, n = rng.below(12); i < n; ++i) s += static_cast<char>('a' + rng.below(26));
      if (rng.chance(0.2)) s += "\xc3\xa9";
      return s;
    }
    case 4: return rng.uniform01() * 1e6 - 5e5;
    case 5: {
      json a = json::array();
      for (std::uint64_t i = 0, n = rng.below(4); i < n; ++i) a.push_back(random_json(rng, depth + 1));
      return a;
    }
    default: {
      json o = json::object();
      for (std::uint64_t i = 0, n = rng.below(4); i < n; ++i)
        o["k" + std::to_string(rng.below(100))] = random_json(rng, depth + 1);
      return o;
    }
  }
}

}  // namespace

TEST_CASE("canonical encoding") {
  const Envelope e = make(MsgType::ActionRequest, 3, {{"zeta", 1}, {"alpha", {{"b", 2}, {"a", 1}}}});
  const std::string text = encode_envelope(e);
  CHECK(text ==
        R"({"msg_type":"ACTION_REQUEST","payload":{"alpha":{"a":1,"b":2},"zeta":1},"receiver":"server",)"
        R"("sender":"agent","seq":3,"timestamp":1700000000003})");
  CHECK(decode_envelope(text) == e);
  CHECK(encode_envelope(decode_envelope(text)) == text);
  for (const MsgType t : {MsgType::Observation, MsgType::ActionRequest, MsgType::ActionResult, MsgType::Event,
                          MsgType::Register, MsgType::RegisterAck, MsgType::Error, MsgType::StatsReport,
                          MsgType::Ping}) {
    CHECK(msg_type_from_string(to_string(t)) == t);
  }
  Envelope stamped = e;
  stamped.received_at = 55;
  CHECK(decode_envelope(encode_envelope(stamped)).received_at == 55);
}

TEST_CASE("random envelopes round-trip") {
  Rng rng(77);
  for (int i = 0; i < 1'000; ++i) {
    Envelope e = make(static_cast<MsgType>(rng.below(9)), rng.uniform_int(0, 1'000'000), json::object());
    for (std::uint64_t k = 0, n = rng.below(5); k < n; ++k) e.payload["f" + std::to_string(k)] = random_json(rng, 0);
    if (rng.chance(0.3)) e.received_at = rng.uniform_int(0, 1'000'000);
    const std::string text = encode_envelope(e);
    CHECK(decode_envelope(text) == e);
    CHECK(encode_envelope(decode_envelope(text)) == text);
  }
}

TEST_CASE("encoding and decoding errors") {
  Envelope bad = make(MsgType::Event, 1, {{"x", std::numeric_limits<double>::infinity()}});
  try {
    encode_envelope(bad);
    FAIL("infinity encoded");
  } catch (const StarError& e) {
    CHECK(e.code() == ErrorCode::UnserializablePayload);
  }
  bad.payload = {{"x", std::nan("")}};
  CHECK_THROWS_AS(encode_envelope(bad), StarError);
  bad.payload = {{"x", std::string("\xff\xfe")}};
  CHECK_THROWS_AS(encode_envelope(bad), StarError);

  const std::string good = encode_envelope(make(MsgType::Ping, 1, {{"pong", false}}));
  CHECK(decode_error(good) == ErrorCode::GameOver);
  CHECK(decode_error(good.substr(0, good.size() / 2)) == ErrorCode::MalformedMessage);
  CHECK(decode_error("") == ErrorCode::MalformedMessage);
  CHECK(decode_error("[1,2]") == ErrorCode::SchemaViolation);
  json j = json::parse(good);
  j["msg_type"] = "FOO";
  CHECK(decode_error(j.dump()) == ErrorCode::UnknownType);
  for (const char* field : {"msg_type", "sender", "receiver", "timestamp", "seq", "payload"}) {
    json missing = json::parse(good);
    missing.erase(field);
    CHECK_MESSAGE(decode_error(missing.dump()) == ErrorCode::SchemaViolation, field);
  }
  j = json::parse(good);
  j["seq"] = "one";
  CHECK(decode_error(j.dump()) == ErrorCode::SchemaViolation);
  j = json::parse(good);
  j["payload"] = 3;
  CHECK(decode_error(j.dump()) == ErrorCode::SchemaViolation);
}

TEST_CASE("registration and match start") {
  Harness h;
  h.connect(1);
  h.act(1, json::array({simple("get_action_list")}));
  CHECK(h.last_error(1) == "NotRegistered");

  h.join(1, 0);
  REQUIRE(h.of_type(1, MsgType::RegisterAck).size() == 1);
  CHECK(h.of_type(1, MsgType::RegisterAck)[0].payload["side"] == 0);
  CHECK_FALSE(h.server.started());

  // Before the opponent arrives only the catalog is served.
  h.act(1, json::array({simple("get_action_list")}));
  CHECK(h.last(1).payload["results"][0]["ok"] == true);
  h.act(1, json::array({simple("end_turn", {{"faction", "wei"}})}));
  CHECK(h.last(1).payload["results"][0]["error_code"] == "NotYourTurn");

  h.connect(3);
  h.send(3, MsgType::Register, {{"faction", h.server.executor().world().factions[0].name},
                                {"agent_id", "intruder"}, {"model_id", "x"}});
  CHECK(h.last_error(3) == "FactionTaken");
  h.send(1, MsgType::Register, {{"faction", h.server.executor().world().factions[1].name},
                                {"agent_id", "again"}, {"model_id", "x"}});
  CHECK(h.last_error(1) == "FactionTaken");

  h.join(2, 1);
  CHECK(h.server.started());
  CHECK(h.of_type(2, MsgType::RegisterAck).size() == 1);
  CHECK(h.of_type(1, MsgType::Observation).size() == 1);
  CHECK(h.of_type(2, MsgType::Observation).empty());
  CHECK(h.saw_event(1, "turn_start"));
  CHECK(h.saw_event(2, "turn_start"));
}

TEST_CASE("turns, results and events") {
  Harness h;
  h.join(1, 0);
  h.join(2, 1);
  const std::string wei = h.server.executor().world().factions[0].name;
  const std::string shu = h.server.executor().world().factions[1].name;

  // Off-turn gameplay is refused without touching the world.
  const std::string before = snapshot_digest(h.server.executor().world());
  h.act(2, json::array({simple("end_turn", {{"faction", shu}})}));
  CHECK(h.last(2).payload["results"][0]["error_code"] == "NotYourTurn");
  CHECK(snapshot_digest(h.server.executor().world()) == before);

  // A failing action stops the batch.
  h.act(1, json::array({simple("observation"), simple("rest", {{"unit_id", 9999}}), simple("get_action_list")}));
  const json& r = h.last(1).payload;
  CHECK(h.last(1).msg_type == MsgType::ActionResult);
  CHECK(r["completed"] == 2);
  CHECK(r["stopped_early"] == true);
  CHECK(r["results"][1]["error_code"] == "UnknownUnit");

  const auto events_before = h.of_type(2, MsgType::Event).size();
  h.act(1, json::array({simple("end_turn", {{"faction", wei}})}));
  CHECK(h.of_type(2, MsgType::Event).size() > events_before);
  CHECK(h.of_type(2, MsgType::Observation).size() == 1);
  // The result reaches the actor before the events it caused.
  const auto& inbox = h.inbox[1];
  std::size_t result_at = 0, last_turn_start = 0;
  for (std::size_t i = 0; i < inbox.size(); ++i) {
    if (inbox[i].msg_type == MsgType::ActionResult) result_at = i;
    if (inbox[i].msg_type == MsgType::Event && inbox[i].payload["event"] == "turn_start") last_turn_start = i;
  }
  CHECK(result_at < last_turn_start);

  h.send(1, MsgType::Ping, {{"pong", false}});
  CHECK(h.last(1).msg_type == MsgType::Ping);
  CHECK(h.last(1).payload["pong"] == true);
  CHECK(h.last(1).payload["echo_seq"] == h.seq[1]);

  for (const auto& [id, msgs] : h.inbox) {
    for (std::size_t i = 1; i < msgs.size(); ++i) CHECK(msgs[i].seq > msgs[i - 1].seq);
    for (const auto& m : msgs) CHECK(m.sender == "server");
  }
}

TEST_CASE("game end is broadcast") {
  ServerConfig cfg;
  cfg.match.scenario.horizon_turns = 1;
  Harness h(cfg);
  h.join(1, 0);
  h.join(2, 1);
  h.act(1, json::array({simple("end_turn", {{"faction", h.server.executor().world().factions[0].name}})}));
  h.act(2, json::array({simple("end_turn", {{"faction", h.server.executor().world().factions[1].name}})}));
  CHECK(h.server.finished());
  CHECK(h.saw_event(1, "game_end"));
  CHECK(h.saw_event(2, "game_end"));
  const MatchRecord rec = h.server.record();
  CHECK(rec.summary["outcome"]["draw"] == true);
  CHECK(verify_replay(rec.log).ok);
}

TEST_CASE("sequence numbers and batch limits") {
  ServerConfig cfg;
  cfg.max_batch = 4;
  Harness h(cfg);
  h.join(1, 0);
  h.join(2, 1);
  h.server.on_message(1, encode_envelope(make(MsgType::Ping, h.seq[1], {{"pong", false}})), 0);
  CHECK(h.last_error(1) == "SchemaViolation");
  h.act(1, json::array());
  CHECK(h.last_error(1) == "SchemaViolation");
  const auto errors = h.of_type(1, MsgType::Error).size();
  h.act(1, json::array({simple("observation"), simple("observation"), simple("observation"), simple("observation")}));
  CHECK(h.of_type(1, MsgType::Error).size() == errors);
  CHECK(h.last(1).payload["completed"] == 4);
  h.act(1, json(std::vector<json>(5, simple("observation"))));
  CHECK(h.last_error(1) == "SchemaViolation");
  h.send(1, MsgType::Observation, json::object());
  CHECK(h.last_error(1) == "SchemaViolation");
  h.server.on_invalid_frame(1, "binary frame");
  CHECK(h.last_error(1) == "MalformedMessage");
}

TEST_CASE("fuzzed traffic never changes the world") {
  Harness h;
  h.join(1, 0);
  h.join(2, 1);
  const std::string digest = snapshot_digest(h.server.executor().world());
  const std::string valid = encode_envelope(make(MsgType::ActionRequest, 1, {{"actions", json::array({simple("observation")})}}));
  Rng rng(2024);
  const std::vector<std::string> names = {"move", "attack", "rest", "occupy", "fortify", "skill", "end_turn",
                                          "observation", "get_faction_state", "get_action_list", "bogus"};
  for (int i = 0; i < 10'000; ++i) {
    std::string text;
    switch (rng.below(5)) {
      case 0: {  // byte noise
        text = valid;
        for (std::uint64_t k = 0, n = 1 + rng.below(6); k < n; ++k)
          text[rng.below(text.size())] = static_cast<char>(rng.below(256));
        break;
      }
      case 1: text = valid.substr(0, rng.below(valid.size())); break;
      case 2: {  // structurally random envelope
        json j = {{"msg_type", rng.chance(0.5) ? "ACTION_REQUEST" : "NOPE"}, {"sender", "x"}, {"receiver", "server"},
                  {"timestamp", 0}, {"seq", rng.uniform_int(-5, 20'000)}, {"payload", random_json(rng, 0)}};
        if (rng.chance(0.3)) j.erase(j.begin());
        text = j.dump();
        break;
      }
      default: {  // well formed, random gameplay from the side not on turn
        json actions = json::array();
        for (std::uint64_t k = 0, n = 1 + rng.below(4); k < n; ++k) {
          json params = random_json(rng, 1);
          if (!params.is_object()) params = json::object();
          if (rng.chance(0.6)) params["unit_id"] = rng.uniform_int(0, 8);
          if (rng.chance(0.4)) params["target_id"] = rng.uniform_int(0, 8);
          if (rng.chance(0.4)) params["target_position"] = {{"col", rng.uniform_int(-2, 16)}, {"row", rng.uniform_int(-2, 16)}};
          actions.push_back({{"action", names[rng.below(names.size())]}, {"params", params}});
        }
        text = encode_envelope(make(MsgType::ActionRequest, ++h.seq[2], {{"actions", actions}}));
        break;
      }
    }
    h.server.on_message(2, text, 0);
  }
  CHECK(snapshot_digest(h.server.executor().world()) == digest);
  CHECK(h.server.executor().world().active_side == 0);
  CHECK_FALSE(h.server.finished());
  for (const auto& m : h.inbox[2]) CHECK(m.sender == "server");
}

TEST_CASE("dropped sessions") {
  SUBCASE("real time forfeits") {
    ServerConfig cfg;
    cfg.match.mode = Mode::RealTime;
    Harness h(cfg);
    h.join(1, 0);
    h.join(2, 1);
    h.now = 5'000;
    h.send(1, MsgType::Ping, {{"pong", true}});
    h.server.on_timer(h.now);
    CHECK_FALSE(h.server.finished());
    h.now = 31'000;
    h.send(1, MsgType::Ping, {{"pong", true}});
    h.server.on_timer(h.now);
    CHECK(h.server.sessions().at(2).dropped);
    CHECK(h.server.finished());
    CHECK(h.server.executor().world().outcome->winner == 0);
    CHECK(h.saw_event(1, "game_end"));
  }
  SUBCASE("turn-based pauses") {
    Harness h;
    h.join(1, 0);
    h.join(2, 1);
    h.server.on_disconnect(2, 100);
    CHECK(h.server.paused());
    CHECK_FALSE(h.server.finished());
    h.act(1, json::array({simple("end_turn", {{"faction", h.server.executor().world().factions[0].name}})}));
    CHECK(h.last(1).payload["results"][0]["error_code"] == "NotYourTurn");
    bool logged = false;
    for (const auto& r : h.server.executor().log().records()) logged |= r["type"] == "session_dropped";
    CHECK(logged);
  }
}

TEST_CASE("published schema agrees with the wire names") {
  const json schema = json::parse(read_text(std::string(STAR_DOCS_DIR) + "/protocol.schema.json"));
  const auto names = [](const json& e) {
    std::set<std::string> out;
    for (const auto& v : e) out.insert(v.get<std::string>());
    return out;
  };
  const auto listed = [](auto last) {
    std::set<std::string> out;
    for (int i = 0; i <= static_cast<int>(last); ++i) out.insert(std::string(to_string(decltype(last)(i))));
    return out;
  };
  CHECK(names(schema["$defs"]["error_code"]["enum"]) == listed(ErrorCode::InsufficientPlayers));
  CHECK(names(schema["$defs"]["action_name"]["enum"]) == listed(ActionKind::ReportLlmStats));
  CHECK(names(schema["properties"]["msg_type"]["enum"]) == listed(MsgType::Ping));
  for (const auto& name : names(schema["$defs"]["error_code"]["enum"])) CHECK(error_code_from_string(name));
}
