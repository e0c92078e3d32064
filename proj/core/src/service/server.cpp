// Copyright (C) 2026 The Mirror Authors
// SPDX-License-Identifier: Apache-2.0

#include "mirror/service/server.hpp"

#include <csignal>
#include <deque>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/signal_set.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

#include "mirror/error.hpp"

namespace mirror::service {
namespace {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;

constexpr const char* kServerName = "mirror/0.3";

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string_view mime_type(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript; charset=utf-8";
  if (ext == ".css") return "text/css; charset=utf-8";
  if (ext == ".json") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".jpg" || ext == ".jpeg") return "image/jpeg";
  if (ext == ".ico") return "image/x-icon";
  if (ext == ".woff2") return "font/woff2";
  if (ext == ".txt") return "text/plain; charset=utf-8";
  return "application/octet-stream";
}

// Maps a request target to a file under root, or nullopt if it escapes.
std::optional<std::filesystem::path> static_path(const std::filesystem::path& root,
                                                 std::string_view target) {
  target = target.substr(0, target.find_first_of("?#"));
  if (target.empty() || target.front() != '/') return std::nullopt;
  std::filesystem::path rel;
  std::size_t pos = 1;
  while (pos <= target.size()) {
    const auto end = std::min(target.find('/', pos), target.size());
    const auto part = target.substr(pos, end - pos);
    if (part == "..") return std::nullopt;
    if (!part.empty() && part != ".") rel /= std::string(part);
    pos = end + 1;
  }
  auto path = root / rel;
  if (std::filesystem::is_directory(path)) path /= "index.html";
  return path;
}

class WsSession;

// Connected clients plus the shared sequence counter. Holding the mutex
// while enqueueing keeps every client's queue in sequence order.
class Hub {
 public:
  void add(const std::shared_ptr<WsSession>& s);
  void remove(WsSession* s);
  void broadcast(const ServerMessage& message);
  void send_to(const std::shared_ptr<WsSession>& s, const ServerMessage& message);
  void close_all();
  std::size_t size() const {
    std::lock_guard lock(mu_);
    return sessions_.size();
  }

 private:
  mutable std::mutex mu_;
  std::uint64_t seq_ = 0;
  std::set<std::shared_ptr<WsSession>> sessions_;
};

struct Shared {
  Hub hub;
  EngineLoop* engine = nullptr;
  ServerHello hello;
  std::optional<std::filesystem::path> ui_root;
  std::string health;
};

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket&& socket, std::shared_ptr<Shared> shared)
      : ws_(std::move(socket)), shared_(std::move(shared)) {}

  void accept(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.set_option(websocket::stream_base::decorator([](websocket::response_type& res) {
      res.set(http::field::server, kServerName);
    }));
    ws_.read_message_max(8 + kMaxFrameSide * kMaxFrameSide * 2);
    ws_.async_accept(req, beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
  }

  void send(std::shared_ptr<const std::string> text) {
    net::post(ws_.get_executor(), [self = shared_from_this(), text = std::move(text)] {
      self->queue_.push_back(text);
      if (self->queue_.size() == 1) self->write_next();
    });
  }

  void close() {
    net::post(ws_.get_executor(), [self = shared_from_this()] {
      beast::error_code ec;
      beast::get_lowest_layer(self->ws_).socket().shutdown(tcp::socket::shutdown_both, ec);
      beast::get_lowest_layer(self->ws_).close();
    });
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    shared_->hub.add(shared_from_this());
    shared_->hub.send_to(shared_from_this(), shared_->hello);
    shared_->hub.send_to(shared_from_this(), StateMessage{shared_->engine->phase()});
    read_next();
  }

  void read_next() {
    ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) {
      shared_->hub.remove(this);
      return;
    }
    const auto data = buffer_.cdata();
    try {
      if (ws_.got_binary()) {
        auto frame = parse_binary_frame(
            std::span(static_cast<const std::byte*>(data.data()), data.size()));
        shared_->engine->submit_frame(std::move(frame.image));
      } else {
        const std::string_view text(static_cast<const char*>(data.data()), data.size());
        auto message = parse_client_text(text);
        std::visit(Overloaded{[&](ClientHello& h) {
                                spdlog::info("client hello: {} (wire v{})", h.client, h.version);
                                shared_->hub.send_to(shared_from_this(), shared_->hello);
                              },
                              [&](ClientFrame& f) {
                                shared_->engine->submit_frame(std::move(f.image));
                              }},
                   message);
      }
    } catch (const std::exception& e) {
      shared_->hub.send_to(shared_from_this(), ErrorMessage{"wire", e.what()});
    }
    buffer_.consume(buffer_.size());
    read_next();
  }

  void write_next() {
    ws_.text(true);
    ws_.async_write(net::buffer(*queue_.front()),
                    beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) {
      queue_.clear();
      shared_->hub.remove(this);
      return;
    }
    queue_.pop_front();
    if (!queue_.empty()) write_next();
  }

  websocket::stream<beast::tcp_stream> ws_;
  std::shared_ptr<Shared> shared_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> queue_;
};

void Hub::add(const std::shared_ptr<WsSession>& s) {
  std::lock_guard lock(mu_);
  sessions_.insert(s);
}

void Hub::remove(WsSession* s) {
  std::lock_guard lock(mu_);
  std::erase_if(sessions_, [s](const auto& p) { return p.get() == s; });
}

void Hub::broadcast(const ServerMessage& message) {
  std::lock_guard lock(mu_);
  auto text = std::make_shared<const std::string>(encode_server_message(message, ++seq_));
  for (const auto& s : sessions_) s->send(text);
}

void Hub::send_to(const std::shared_ptr<WsSession>& s, const ServerMessage& message) {
  std::lock_guard lock(mu_);
  s->send(std::make_shared<const std::string>(encode_server_message(message, ++seq_)));
}

void Hub::close_all() {
  std::lock_guard lock(mu_);
  for (const auto& s : sessions_) s->close();
  sessions_.clear();
}

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket&& socket, std::shared_ptr<Shared> shared)
      : stream_(std::move(socket)), shared_(std::move(shared)) {}

  void start() { read_next(); }

 private:
  void read_next() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_,
                     beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) return;
    if (websocket::is_upgrade(req_)) {
      if (req_.target() == "/ws") {
        stream_.expires_never();
        std::make_shared<WsSession>(stream_.release_socket(), shared_)->accept(std::move(req_));
        return;
      }
      return respond(text_response(http::status::not_found, "no websocket here\n"));
    }
    respond(handle());
  }

  http::response<http::string_body> text_response(http::status status, std::string body,
                                                  std::string_view type = "text/plain") {
    http::response<http::string_body> res{status, req_.version()};
    res.set(http::field::server, kServerName);
    res.set(http::field::content_type, std::string(type));
    res.keep_alive(req_.keep_alive());
    res.body() = std::move(body);
    res.prepare_payload();
    return res;
  }

  http::response<http::string_body> handle() {
    if (req_.method() != http::verb::get && req_.method() != http::verb::head) {
      return text_response(http::status::method_not_allowed, "method not allowed\n");
    }
    const std::string_view target(req_.target().data(), req_.target().size());
    if (target == "/health") {
      return text_response(http::status::ok, shared_->health, "application/json");
    }
    if (!shared_->ui_root) return text_response(http::status::not_found, "not found\n");
    const auto path = static_path(*shared_->ui_root, target);
    if (!path) return text_response(http::status::bad_request, "bad path\n");
    std::ifstream in(*path, std::ios::binary);
    if (!in) return text_response(http::status::not_found, "not found\n");
    std::ostringstream body;
    body << in.rdbuf();
    auto res = text_response(http::status::ok, body.str(), mime_type(*path));
    if (req_.method() == http::verb::head) res.body().clear();
    return res;
  }

  void respond(http::response<http::string_body> res) {
    auto sp = std::make_shared<http::response<http::string_body>>(std::move(res));
    http::async_write(stream_, *sp,
                      [self = shared_from_this(), sp](beast::error_code ec, std::size_t) {
                        if (ec || sp->need_eof()) {
                          beast::error_code ignored;
                          self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
                          return;
                        }
                        self->read_next();
                      });
  }

  beast::tcp_stream stream_;
  std::shared_ptr<Shared> shared_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

}  // namespace

struct Service::Impl {
  ServiceConfig config;
  std::shared_ptr<const Assets> assets;
  std::shared_ptr<Shared> shared = std::make_shared<Shared>();
  std::unique_ptr<EngineLoop> engine;
  net::io_context ioc{1};
  tcp::acceptor acceptor{ioc};
  std::thread io_thread;
  bool started = false;
  bool stopped = false;

  void accept_next() {
    acceptor.async_accept(net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
      if (ec) {
        if (ec != net::error::operation_aborted) spdlog::warn("accept: {}", ec.message());
        if (!acceptor.is_open()) return;
      } else {
        std::make_shared<HttpSession>(std::move(socket), shared)->start();
      }
      accept_next();
    });
  }
};

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>()) {
  impl_->config = std::move(config);
  const auto& cfg = impl_->config;
  impl_->assets = load_assets(cfg);

  impl_->shared->hello = ServerHello{kServerName, kWireVersion, impl_->assets->identities};
  impl_->shared->ui_root = cfg.ui_root;
  impl_->shared->health =
      nlohmann::json{{"status", "ready"}, {"assets", impl_->assets->identities}}.dump() + "\n";

  auto shared = impl_->shared;
  impl_->engine = std::make_unique<EngineLoop>(
      impl_->assets, cfg, [shared](const ServerMessage& m) { shared->hub.broadcast(m); });
  impl_->shared->engine = impl_->engine.get();

  beast::error_code ec;
  const auto address = net::ip::make_address(cfg.listen_address, ec);
  if (ec) throw ConfigError("listen: bad address '" + cfg.listen_address + "'");
  const tcp::endpoint endpoint{address, cfg.port};
  auto& acc = impl_->acceptor;
  auto fail = [&](const char* what) {
    const auto msg = "listen: " + std::string(what) + " " + cfg.listen_address + ":" +
                     std::to_string(cfg.port) + ": " + ec.message();
    beast::error_code ignored;
    acc.close(ignored);
    throw std::runtime_error(msg);
  };
  if (acc.open(endpoint.protocol(), ec)) fail("cannot open");
  if (acc.set_option(net::socket_base::reuse_address(true), ec)) fail("cannot configure");
  if (acc.bind(endpoint, ec)) fail("cannot bind");
  if (acc.listen(net::socket_base::max_listen_connections, ec)) fail("cannot listen on");
}

Service::~Service() { stop(); }

std::uint16_t Service::port() const { return impl_->acceptor.local_endpoint().port(); }

const std::vector<std::string>& Service::asset_identities() const {
  return impl_->assets->identities;
}

void Service::start() {
  if (impl_->started) return;
  impl_->started = true;
  impl_->engine->start();
  impl_->accept_next();
  impl_->io_thread = std::thread([this] { impl_->ioc.run(); });
}

void Service::stop() {
  if (impl_->stopped) return;
  impl_->stopped = true;
  impl_->engine->stop();
  net::post(impl_->ioc, [this] {
    beast::error_code ec;
    impl_->acceptor.close(ec);
    impl_->shared->hub.close_all();
  });
  if (impl_->io_thread.joinable()) {
    // Give sessions a moment to close, then stop whatever is left.
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    impl_->ioc.stop();
    impl_->io_thread.join();
  }
}

void Service::run_until_signal() {
  net::io_context signals_ctx;
  net::signal_set signals(signals_ctx, SIGINT, SIGTERM);
  start();
  signals.async_wait([](beast::error_code, int sig) { spdlog::info("signal {}, stopping", sig); });
  signals_ctx.run();
  stop();
}

std::size_t Service::client_count() const { return impl_->shared->hub.size(); }

EngineLoop& Service::engine() { return *impl_->engine; }

}  // namespace mirror::service
