#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "json.hpp"
#include "star/envelope.hpp"
#include "star/executor.hpp"
#include "star/match.hpp"

namespace star {

using ConnectionId = std::uint64_t;

struct AgentSession {
  ConnectionId connection = 0;
  std::string agent_id;
  int side = -1;  // -1 until registered
  std::string model_id;
  std::int64_t connected_at = 0;
  std::int64_t last_seen = 0;
  std::optional<std::int64_t> last_seq;  // inbound
  std::int64_t out_seq = 0;              // outbound
  bool dropped = false;
};

struct ServerConfig {
  MatchConfig match;
  std::int64_t heartbeat_ms = 10'000;
  int missed_heartbeats = 3;
  std::size_t max_batch = 32;
};

// Transport-independent match host. The transport feeds it connection
// events and text frames and delivers whatever it hands to `send`. Every call
// must come from one thread; that thread is the match's single writer.
class GameServer {
 public:
  using Send = std::function<void(ConnectionId, std::string)>;

  GameServer(ServerConfig config, Send send);

  void on_connect(ConnectionId id, std::int64_t now_ms);
  void on_message(ConnectionId id, std::string_view text, std::int64_t now_ms);
  void on_disconnect(ConnectionId id, std::int64_t now_ms);
  // Frames the wire format does not allow (binary frames).
  void on_invalid_frame(ConnectionId id, const std::string& reason);
  // Heartbeats, liveness and, in real time, the match clock.
  void on_timer(std::int64_t now_ms);

  bool started() const { return started_; }
  bool finished() const { return executor_.finished(); }
  bool paused() const { return paused_; }
  const ActionExecutor& executor() const { return executor_; }
  const std::map<ConnectionId, AgentSession>& sessions() const { return sessions_; }

  // Summary record plus the full log, in the same shape as scripted matches.
  MatchRecord record();

 private:
  void send(AgentSession& session, MsgType type, nlohmann::json payload);
  void send_error(AgentSession& session, ErrorCode code, const std::string& message);
  void handle(AgentSession& session, const Envelope& e);
  void handle_register(AgentSession& session, const Envelope& e);
  void handle_actions(AgentSession& session, const Envelope& e);
  void publish_events();
  void push_observation(int side);
  void drop(AgentSession& session, const std::string& reason);

  ServerConfig config_;
  Send send_;
  ActionExecutor executor_;
  std::map<ConnectionId, AgentSession> sessions_;
  bool started_ = false;
  bool paused_ = false;
  std::int64_t started_at_ = 0;
  std::int64_t last_ping_ = 0;
  std::optional<MatchRecord> record_;
};

}  // namespace star
