#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "star/server.hpp"

namespace star {

// WebSocket transport for GameServer: one io_context thread runs accepts,
// reads, writes and the timer, so the game core sees a single writer.
class WsServer {
 public:
  // Binds and listens immediately; port 0 picks a free port.
  WsServer(ServerConfig config, const std::string& host, std::uint16_t port);
  ~WsServer();
  WsServer(const WsServer&) = delete;
  WsServer& operator=(const WsServer&) = delete;

  std::uint16_t port() const;

  // Serves until the match ends (and final frames are flushed) or stop().
  MatchRecord run();
  // Safe from any thread.
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace star
