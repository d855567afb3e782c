#include "star/server.hpp"

#include "star/digest.hpp"

namespace star {

using nlohmann::json;

GameServer::GameServer(ServerConfig config, Send send)
    : config_(std::move(config)),
      send_(std::move(send)),
      executor_(config_.match.scenario, config_.match.mode, config_.match.seed, config_.match.locks) {
  json c = to_json(config_.match);
  c["type"] = "config";
  c["transport"] = "websocket";
  executor_.log().append(c);
}

void GameServer::send(AgentSession& session, MsgType type, json payload) {
  if (session.dropped) return;
  Envelope e;
  e.msg_type = type;
  e.sender = "server";
  e.receiver = session.agent_id.empty() ? "connection-" + std::to_string(session.connection) : session.agent_id;
  e.timestamp = wall_clock_ms();
  e.seq = ++session.out_seq;
  e.payload = std::move(payload);
  std::string text;
  try {
    text = encode_envelope(e);
  } catch (const StarError& err) {
    e.msg_type = MsgType::Error;
    e.payload = error_payload(to_string(err.code()), "reply could not be encoded", false);
    text = encode_envelope(e);
  }
  send_(session.connection, std::move(text));
}

namespace {

// Parser messages quote the offending bytes; keep them printable ASCII so the
// reply itself always encodes.
std::string printable(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (const unsigned char c : text) {
    if (c >= 0x20 && c < 0x7f) {
      out += static_cast<char>(c);
    } else {
      static constexpr char kHex[] = "0123456789abcdef";
      out += "\\x";
      out += kHex[c >> 4];
      out += kHex[c & 15];
    }
  }
  return out;
}

}  // namespace

void GameServer::send_error(AgentSession& session, ErrorCode code, const std::string& message) {
  send(session, MsgType::Error, error_payload(to_string(code), printable(message), is_spatial(code)));
}

void GameServer::on_connect(ConnectionId id, std::int64_t now_ms) {
  AgentSession s;
  s.connection = id;
  s.connected_at = now_ms;
  s.last_seen = now_ms;
  sessions_[id] = s;
}

void GameServer::on_disconnect(ConnectionId id, std::int64_t now_ms) {
  (void)now_ms;
  const auto it = sessions_.find(id);
  if (it == sessions_.end() || it->second.dropped) return;
  drop(it->second, "disconnected");
}

void GameServer::on_invalid_frame(ConnectionId id, const std::string& reason) {
  const auto it = sessions_.find(id);
  if (it != sessions_.end() && !it->second.dropped) send_error(it->second, ErrorCode::MalformedMessage, reason);
}

void GameServer::drop(AgentSession& session, const std::string& reason) {
  session.dropped = true;
  executor_.log().append({{"type", "session_dropped"},
                          {"connection", session.connection},
                          {"side", session.side},
                          {"reason", reason}});
  if (session.side < 0 || finished()) return;
  // A lost agent forfeits in real time; a turn-based match waits, frozen.
  if (config_.match.mode == Mode::RealTime && started_) {
    executor_.forfeit(session.side, "SessionDropped");
    publish_events();
  } else {
    paused_ = true;
  }
}

void GameServer::on_message(ConnectionId id, std::string_view text, std::int64_t now_ms) {
  const auto it = sessions_.find(id);
  if (it == sessions_.end() || it->second.dropped) return;
  AgentSession& session = it->second;
  session.last_seen = now_ms;
  Envelope e;
  try {
    e = decode_envelope(text);
  } catch (const StarError& err) {
    send_error(session, err.code(), err.what());
    return;
  }
  if (session.last_seq && e.seq <= *session.last_seq) {
    send_error(session, ErrorCode::SchemaViolation,
               "seq " + std::to_string(e.seq) + " does not follow " + std::to_string(*session.last_seq));
    return;
  }
  session.last_seq = e.seq;
  e.received_at = now_ms;
  try {
    handle(session, e);
  } catch (const StarError& err) {
    send_error(session, err.code(), err.what());
  }
  publish_events();
}

void GameServer::handle(AgentSession& session, const Envelope& e) {
  switch (e.msg_type) {
    case MsgType::Register: return handle_register(session, e);
    case MsgType::Ping:
      if (!e.payload.value("pong", false)) send(session, MsgType::Ping, {{"pong", true}, {"echo_seq", e.seq}});
      return;
    case MsgType::ActionRequest:
    case MsgType::StatsReport:
      if (session.side < 0) throw StarError(ErrorCode::NotRegistered, "send REGISTER first");
      return handle_actions(session, e);
    default:
      throw StarError(ErrorCode::SchemaViolation, std::string(to_string(e.msg_type)) + " is not accepted by the server");
  }
}

void GameServer::handle_register(AgentSession& session, const Envelope& e) {
  if (session.side >= 0) throw StarError(ErrorCode::FactionTaken, "this connection is already registered");
  const ActionResult r = executor_.register_agent(e.payload);
  if (!r.ok) throw StarError(*r.error, r.message);
  session.side = r.detail["side"].get<int>();
  session.agent_id = r.detail["agent_id"].get<std::string>();
  session.model_id = r.detail["model_id"].get<std::string>();
  json ack = r.detail;
  ack["mode"] = to_string(config_.match.mode);
  ack["opponent"] = executor_.world().factions[opponent(session.side)].name;
  send(session, MsgType::RegisterAck, ack);

  if (!started_ && executor_.registered(0) && executor_.registered(1)) {
    started_ = true;
    started_at_ = e.received_at.value_or(wall_clock_ms());
    executor_.start();
    // Turn-based: the first turn_start already carries the push.
    publish_events();
    if (config_.match.mode == Mode::RealTime) {
      push_observation(0);
      push_observation(1);
    }
  }
}

void GameServer::handle_actions(AgentSession& session, const Envelope& e) {
  json actions;
  if (e.msg_type == MsgType::StatsReport) {
    actions = json::array({{{"action", "report_llm_stats"}, {"params", e.payload}}});
  } else {
    const auto it = e.payload.find("actions");
    if (it == e.payload.end() || !it->is_array() || it->empty() || it->size() > config_.max_batch) {
      throw StarError(ErrorCode::SchemaViolation,
                      "ACTION_REQUEST payload needs actions: a list of 1.." + std::to_string(config_.max_batch));
    }
    actions = *it;
  }
  executor_.log().append({{"type", "envelope"},
                          {"side", session.side},
                          {"msg_type", to_string(e.msg_type)},
                          {"seq", e.seq},
                          {"timestamp", e.timestamp},
                          {"received_at", e.received_at.value_or(0)}});

  json results = json::array();
  bool stopped = false;
  for (const auto& raw : actions) {
    ActionResult r;
    if (!started_ && raw.is_object() && raw.value("action", std::string{}) != "get_action_list") {
      r = ActionResult::failure(ErrorCode::NotYourTurn, "match has not started");
    } else if (paused_) {
      r = ActionResult::failure(ErrorCode::NotYourTurn, "match paused: an agent dropped");
    } else {
      r = executor_.submit(session.side, raw);
    }
    results.push_back(r.to_json());
    if (!r.ok) {
      stopped = results.size() < actions.size();
      break;
    }
  }
  send(session, MsgType::ActionResult,
       {{"results", results}, {"completed", results.size()}, {"stopped_early", stopped}, {"request_seq", e.seq}});
}

void GameServer::publish_events() {
  bool turn_changed = false;
  for (const json& ev : executor_.drain_events()) {
    for (auto& [_, s] : sessions_) {
      if (s.side >= 0) send(s, MsgType::Event, ev);
    }
    if (ev["event"] == "turn_start") turn_changed = true;
  }
  if (turn_changed && started_ && !finished() && config_.match.mode == Mode::TurnBased) {
    push_observation(executor_.world().active_side.value_or(0));
  }
}

// The state-update push that accompanies a turn transition.
void GameServer::push_observation(int side) {
  for (auto& [_, s] : sessions_) {
    if (s.side != side) continue;
    json obs = build_observation(executor_.world(), executor_.rules(), side, ObservationLevel::Tactical);
    send(s, MsgType::Observation, obs);
  }
}

void GameServer::on_timer(std::int64_t now_ms) {
  for (auto& [_, s] : sessions_) {
    if (!s.dropped && now_ms - s.last_seen > config_.heartbeat_ms * config_.missed_heartbeats) {
      drop(s, "missed heartbeats");
    }
  }
  if (now_ms - last_ping_ >= config_.heartbeat_ms) {
    last_ping_ = now_ms;
    for (auto& [_, s] : sessions_) send(s, MsgType::Ping, {{"pong", false}});
  }
  if (started_ && !finished() && config_.match.mode == Mode::RealTime) {
    executor_.advance_to(now_ms - started_at_);
  }
  publish_events();
}

MatchRecord GameServer::record() {
  MatchRecord rec;
  rec.log = executor_.log();
  if (executor_.world().outcome) rec.outcome = *executor_.world().outcome;
  rec.final_digest = snapshot_digest(executor_.world());
  json stats = json::array();
  for (int side = 0; side < 2; ++side) {
    rec.stats[side] = compute_stats(rec.log, side);
    json s = rec.stats[side].to_json();
    s["side"] = side;
    s["faction"] = executor_.world().factions[side].name;
    s["counters"] = executor_.counters(side).to_json();
    s["llm_stats"] = executor_.llm_stats(side);
    const auto quality = executor_.strategic_quality(side);
    s["strategic_quality"] = quality ? json(*quality) : json(nullptr);
    stats.push_back(s);
  }
  rec.summary = {{"type", "summary"},
                 {"outcome", executor_.world().outcome ? outcome_to_json(executor_.world(), rec.outcome) : json(nullptr)},
                 {"final_digest", rec.final_digest},
                 {"turn_number", executor_.world().turn_number},
                 {"clock_ms", executor_.world().clock_ms},
                 {"t_max", config_.match.mode == Mode::TurnBased ? config_.match.scenario.horizon_turns
                                                                 : config_.match.scenario.horizon_ms},
                 {"stats", stats},
                 {"telemetry", executor_.telemetry()}};
  rec.log.append(rec.summary);
  return rec;
}

}  // namespace star
