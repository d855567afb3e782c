#include "star/ws_server.hpp"

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <chrono>
#include <deque>
#include <iostream>
#include <map>

namespace star {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;

namespace {

constexpr auto kTick = std::chrono::milliseconds(100);
// After the match ends: serve at least kMinDrain more ticks so clients can
// read the final events, and at most kMaxDrain while write queues flush.
constexpr int kMinDrain = 2;
constexpr int kMaxDrain = 20;

}  // namespace

struct WsServer::Impl {
  class Session : public std::enable_shared_from_this<Session> {
   public:
    Session(Impl& owner, ConnectionId id, tcp::socket socket)
        : owner_(owner), id_(id), ws_(std::move(socket)) {}

    void start() {
      ws_.text(true);
      ws_.async_accept([self = shared_from_this()](beast::error_code ec) {
        if (ec) return;
        self->open_ = true;
        self->owner_.game.on_connect(self->id_, wall_clock_ms());
        self->read();
      });
    }

    void send(std::string text) {
      if (!open_) return;
      queue_.push_back(std::move(text));
      if (queue_.size() == 1) write();
    }

    void close() {
      if (!open_) return;
      open_ = false;
      ws_.async_close(websocket::close_code::normal, [self = shared_from_this()](beast::error_code) {});
    }

    bool idle() const { return queue_.empty(); }

   private:
    void read() {
      ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
        if (ec) return self->lost();
        if (!self->ws_.got_text()) {
          self->owner_.game.on_invalid_frame(self->id_, "binary frames are not part of the protocol");
        } else {
          self->owner_.game.on_message(self->id_, beast::buffers_to_string(self->buffer_.data()), wall_clock_ms());
        }
        self->buffer_.consume(self->buffer_.size());
        if (self->open_) self->read();
      });
    }

    void write() {
      ws_.async_write(asio::buffer(queue_.front()), [self = shared_from_this()](beast::error_code ec, std::size_t) {
        if (ec) return self->lost();
        self->queue_.pop_front();
        if (!self->queue_.empty()) self->write();
      });
    }

    void lost() {
      if (!open_) return;
      open_ = false;
      queue_.clear();
      owner_.game.on_disconnect(id_, wall_clock_ms());
    }

    Impl& owner_;
    ConnectionId id_;
    websocket::stream<tcp::socket> ws_;
    beast::flat_buffer buffer_;
    std::deque<std::string> queue_;
    bool open_ = false;
  };

  Impl(ServerConfig config, const std::string& host, std::uint16_t port)
      : game(std::move(config), [this](ConnectionId id, std::string text) { deliver(id, std::move(text)); }),
        acceptor(io),
        timer(io) {
    const tcp::endpoint endpoint(asio::ip::make_address(host), port);
    acceptor.open(endpoint.protocol());
    acceptor.set_option(asio::socket_base::reuse_address(true));
    acceptor.bind(endpoint);
    acceptor.listen();
  }

  void deliver(ConnectionId id, std::string text) {
    if (const auto it = sessions.find(id); it != sessions.end()) it->second->send(std::move(text));
  }

  void accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;
      const ConnectionId id = ++next_id;
      // Small request/reply frames; batching them only adds latency.
      socket.set_option(tcp::no_delay(true), ec);
      auto session = std::make_shared<Session>(*this, id, std::move(socket));
      sessions[id] = session;
      session->start();
      accept();
    });
  }

  void schedule() {
    timer.expires_after(kTick);
    timer.async_wait([this](beast::error_code ec) {
      if (ec) return;
      game.on_timer(wall_clock_ms());
      if (game.finished() || stopping) {
        bool flushed = true;
        for (const auto& [_, s] : sessions) flushed = flushed && s->idle();
        ++drained;
        if ((flushed && drained >= kMinDrain) || drained >= kMaxDrain) return shutdown();
      }
      schedule();
    });
  }

  void shutdown() {
    beast::error_code ignored;
    acceptor.close(ignored);
    for (auto& [_, s] : sessions) s->close();
    // Give close handshakes a moment, then stop.
    timer.expires_after(kTick * 2);
    timer.async_wait([this](beast::error_code) { io.stop(); });
  }

  asio::io_context io{1};
  GameServer game;
  tcp::acceptor acceptor;
  asio::steady_timer timer;
  std::map<ConnectionId, std::shared_ptr<Session>> sessions;
  ConnectionId next_id = 0;
  bool stopping = false;
  int drained = 0;
};

WsServer::WsServer(ServerConfig config, const std::string& host, std::uint16_t port)
    : impl_(std::make_unique<Impl>(std::move(config), host, port)) {}

WsServer::~WsServer() = default;

std::uint16_t WsServer::port() const { return impl_->acceptor.local_endpoint().port(); }

MatchRecord WsServer::run() {
  impl_->accept();
  impl_->schedule();
  impl_->io.run();
  impl_->sessions.clear();
  return impl_->game.record();
}

void WsServer::stop() {
  asio::post(impl_->io, [this] { impl_->stopping = true; });
}

}  // namespace star
