#include "hijaiyah/http_server.hpp"

#include <atomic>
#include <deque>
#include <future>
#include <map>
#include <optional>
#include <mutex>
#include <thread>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include <fmt/format.h>

#include "hijaiyah/error.hpp"

namespace hijaiyah {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::json;

namespace {

constexpr std::size_t kMaxQueuedFrames = 64;
constexpr std::size_t kBodyLimit = 8u << 20;

class WsSession;

/// Registry of live push sessions.
class Hub {
 public:
  void join(const std::shared_ptr<WsSession>& s) {
    std::lock_guard lock(mutex_);
    sessions_.push_back(s);
  }

  std::vector<std::shared_ptr<WsSession>> live() {
    std::lock_guard lock(mutex_);
    std::vector<std::shared_ptr<WsSession>> out;
    std::erase_if(sessions_, [&](const std::weak_ptr<WsSession>& w) {
      auto s = w.lock();
      if (s) out.push_back(std::move(s));
      return !s;
    });
    return out;
  }

 private:
  std::mutex mutex_;
  std::vector<std::weak_ptr<WsSession>> sessions_;
};

struct Shared {
  Shared(SyncService& service, api::ApiConfig config) : router(service, std::move(config)) {}
  api::Router router;
  Hub hub;
};

class WsSession : public std::enable_shared_from_this<WsSession> {
 public:
  WsSession(tcp::socket&& socket, std::shared_ptr<Shared> shared) : ws_(std::move(socket)), shared_(std::move(shared)) {}

  void run(http::request<http::string_body> req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
  }

  economy::Scope scope() const noexcept { return static_cast<economy::Scope>(scope_.load()); }

  /// Thread-safe; frames are queued on the session strand. When a slow client
  /// falls behind, the oldest queued (not in-flight) frames are dropped.
  void send(std::shared_ptr<const std::string> frame) {
    net::post(ws_.get_executor(), [self = shared_from_this(), frame = std::move(frame)] {
      self->queue_.push_back(frame);
      while (self->queue_.size() > kMaxQueuedFrames) self->queue_.erase(self->queue_.begin() + 1);
      if (self->queue_.size() == 1) self->do_write();
    });
  }

 private:
  void on_accept(beast::error_code ec) {
    if (ec) return;
    shared_->hub.join(shared_from_this());
    send_leaderboard();
    do_read();
  }

  void send_leaderboard() {
    const auto& router = shared_->router;
    send(std::make_shared<const std::string>(router.leaderboard_frame(scope(), router.service().now())));
  }

  void do_read() { ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this())); }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) return;  // closed; the hub drops the expired pointer
    const auto text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    const json msg = json::parse(text, nullptr, false);
    if (msg.is_object() && msg.value("type", "") == "subscribe") {
      try {
        scope_ = static_cast<int>(economy::parse_scope(msg.value("scope", "all")));
        send_leaderboard();
      } catch (const Error& e) {
        send(std::make_shared<const std::string>(json{{"type", "error"}, {"payload", {{"message", e.what()}}}}.dump()));
      }
    }
    do_read();
  }

  void do_write() {
    ws_.text(true);
    ws_.async_write(net::buffer(*queue_.front()), beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) {
      queue_.clear();
      return;
    }
    queue_.pop_front();
    if (!queue_.empty()) do_write();
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::shared_ptr<const std::string>> queue_;
  std::shared_ptr<Shared> shared_;
  std::atomic<int> scope_{static_cast<int>(economy::Scope::all_time)};
};

class HttpSession : public std::enable_shared_from_this<HttpSession> {
 public:
  HttpSession(tcp::socket&& socket, std::shared_ptr<Shared> shared) : stream_(std::move(socket)), shared_(std::move(shared)) {}

  void run() { net::dispatch(stream_.get_executor(), beast::bind_front_handler(&HttpSession::do_read, shared_from_this())); }

 private:
  void do_read() {
    parser_.emplace();
    parser_->body_limit(kBodyLimit);
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, *parser_, beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) return close();
    if (ec) return;
    auto req = parser_->release();
    if (websocket::is_upgrade(req)) {
      const auto target = std::string(req.target());
      if (api::split_target(target).first == api::kStreamPath) {
        stream_.expires_never();
        std::make_shared<WsSession>(stream_.release_socket(), shared_)->run(std::move(req));
        return;
      }
    }

    api::Request in;
    in.method = std::string(req.method_string());
    in.target = std::string(req.target());
    for (const auto& field : req) {
      std::string name(field.name_string());
      std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
      in.headers[name] = std::string(field.value());
    }
    in.body = std::move(req.body());
    const auto out = shared_->router.handle(in);

    auto res = std::make_shared<http::response<http::string_body>>(static_cast<http::status>(out.status), req.version());
    res->set(http::field::server, "hijaiyah");
    res->set(http::field::content_type, out.content_type);
    res->keep_alive(req.keep_alive());
    res->body() = out.body;
    res->prepare_payload();
    http::async_write(stream_, *res, [self = shared_from_this(), res](beast::error_code wec, std::size_t) {
      if (wec) return;
      if (!res->keep_alive()) return self->close();
      self->do_read();
    });
  }

  void close() {
    beast::error_code ec;
    stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  std::optional<http::request_parser<http::string_body>> parser_;
  std::shared_ptr<Shared> shared_;
};

}  // namespace

struct HttpServer::Impl : std::enable_shared_from_this<HttpServer::Impl> {
  Impl(SyncService& service, api::ApiConfig config, std::size_t threads)
      : shared(std::make_shared<Shared>(service, std::move(config))),
        ioc(static_cast<int>(std::max<std::size_t>(threads, 1))),
        acceptor(net::make_strand(ioc)),
        n_threads(std::max<std::size_t>(threads, 1)) {}

  void do_accept() {
    acceptor.async_accept(net::make_strand(ioc), [self = shared_from_this()](beast::error_code ec, tcp::socket socket) {
      if (!self->acceptor.is_open()) return;
      if (!ec) std::make_shared<HttpSession>(std::move(socket), self->shared)->run();
      self->do_accept();
    });
  }

  void notify(const PushNotice& notice) {
    auto sessions = shared->hub.live();
    if (sessions.empty()) return;
    if (notice.leaderboard_changed) {
      const auto now = shared->router.service().now();
      std::map<economy::Scope, std::shared_ptr<const std::string>> frames;
      for (const auto& s : sessions) {
        auto& f = frames[s->scope()];
        if (!f) f = std::make_shared<const std::string>(shared->router.leaderboard_frame(s->scope(), now));
        s->send(f);
      }
    }
    for (const auto& b : notice.badges) {
      auto f = std::make_shared<const std::string>(api::Router::badge_frame(b));
      for (const auto& s : sessions) s->send(f);
    }
  }

  std::shared_ptr<Shared> shared;
  net::io_context ioc;
  tcp::acceptor acceptor;
  std::size_t n_threads;
  std::vector<std::thread> threads;
  std::optional<net::executor_work_guard<net::io_context::executor_type>> work;
};

HttpServer::HttpServer(SyncService& service, api::ApiConfig config, const std::string& address, std::uint16_t port,
                       std::size_t threads)
    : impl_(std::make_shared<Impl>(service, std::move(config), threads)) {
  beast::error_code ec;
  const auto addr = net::ip::make_address(address, ec);
  if (ec) throw Error(Errc::io, fmt::format("invalid listen address '{}'", address));
  const tcp::endpoint endpoint(addr, port);
  auto fail = [&](const char* what) {
    throw Error(Errc::io, fmt::format("{} {}:{}: {}", what, address, port, ec.message()));
  };
  impl_->acceptor.open(endpoint.protocol(), ec);
  if (ec) fail("open");
  impl_->acceptor.set_option(net::socket_base::reuse_address(true), ec);
  impl_->acceptor.bind(endpoint, ec);
  if (ec) fail("bind");
  impl_->acceptor.listen(net::socket_base::max_listen_connections, ec);
  if (ec) fail("listen");

  std::weak_ptr<Impl> weak = impl_;
  service.subscribe([weak](const PushNotice& n) {
    if (auto impl = weak.lock()) impl->notify(n);
  });
}

HttpServer::~HttpServer() { stop(); }

std::uint16_t HttpServer::port() const noexcept { return impl_->acceptor.local_endpoint().port(); }

void HttpServer::start() {
  if (!impl_->threads.empty()) return;
  impl_->work.emplace(impl_->ioc.get_executor());
  impl_->do_accept();
  for (std::size_t i = 0; i < impl_->n_threads; ++i) impl_->threads.emplace_back([impl = impl_] { impl->ioc.run(); });
}

void HttpServer::stop() {
  if (!impl_) return;
  net::post(impl_->acceptor.get_executor(), [impl = impl_] {
    beast::error_code ec;
    impl->acceptor.close(ec);
  });
  impl_->work.reset();
  impl_->ioc.stop();
  for (auto& t : impl_->threads)
    if (t.joinable()) t.join();
  impl_->threads.clear();
}

void HttpServer::run_until_signal() {
  net::signal_set signals(impl_->ioc, SIGINT, SIGTERM);
  std::promise<void> done;
  signals.async_wait([&](beast::error_code, int) { done.set_value(); });
  start();
  done.get_future().wait();
  stop();
}

}  // namespace hijaiyah
