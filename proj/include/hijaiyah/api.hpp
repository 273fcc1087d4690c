#pragma once

#include <map>
#include <string>

#include "hijaiyah/economy.hpp"
#include "hijaiyah/service.hpp"

namespace hijaiyah::api {

inline constexpr std::string_view kPrefix = "/api/v1";
inline constexpr std::string_view kStreamPath = "/api/v1/stream";

struct Request {
  std::string method;  // upper case
  std::string target;  // path plus optional query
  std::map<std::string, std::string> headers;  // lower-case names
  std::string body;
};

struct Response {
  int status = 200;
  std::string content_type = "application/json";
  std::string body;
};

struct ApiConfig {
  /// Bearer token for dashboard and export routes. Empty disables them.
  std::string operator_token;
};

/// Splits `target` into path and decoded query parameters.
std::pair<std::string, std::map<std::string, std::string>> split_target(std::string_view target);
std::string percent_decode(std::string_view text);

/// Transport-free request handling for every `/api/v1` route.
class Router {
 public:
  Router(SyncService& service, ApiConfig config) : service_(service), config_(std::move(config)) {}

  Response handle(const Request& request) const;

  SyncService& service() const noexcept { return service_; }

  /// Push frames: `{"type":"leaderboard"|"badge","payload":...}`.
  nlohmann::json leaderboard_payload(economy::Scope scope, Timestamp now) const;
  std::string leaderboard_frame(economy::Scope scope, Timestamp now) const;
  static std::string badge_frame(const BadgeAward& award);

 private:
  Response route(const Request& request, const std::string& path, const std::map<std::string, std::string>& query) const;
  bool authorized(const Request& request) const;

  SyncService& service_;
  ApiConfig config_;
};

}  // namespace hijaiyah::api
