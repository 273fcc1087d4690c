#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "hijaiyah/api.hpp"

namespace hijaiyah {

/// HTTP/1.1 + WebSocket front end for the Router on a single port. The push
/// channel lives at /api/v1/stream.
class HttpServer {
 public:
  /// Binds immediately; throws Error{io} when the address is unavailable. Port 0 picks a free port.
  HttpServer(SyncService& service, api::ApiConfig config, const std::string& address, std::uint16_t port,
             std::size_t threads = 2);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  std::uint16_t port() const noexcept;

  void start();
  void stop();
  /// Runs until SIGINT/SIGTERM or stop().
  void run_until_signal();

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
};

}  // namespace hijaiyah
