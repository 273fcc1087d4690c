#include "hijaiyah/api.hpp"

#include <charconv>

#include <fmt/format.h>

#include "hijaiyah/error.hpp"
#include "hijaiyah/learning.hpp"
#include "hijaiyah/trace.hpp"

namespace hijaiyah::api {

using nlohmann::json;

namespace {

struct HttpError {
  int status;
  std::string code;
  std::string message;
};

Response json_response(int status, const json& body) { return {status, "application/json", body.dump()}; }

Response error_response(int status, std::string_view code, std::string_view message) {
  return json_response(status, {{"error", code}, {"message", message}});
}

int status_for(Errc code) {
  switch (code) {
    case Errc::unknown_player:
    case Errc::unknown_letter:
      return 404;
    case Errc::duplicate_profile:
    case Errc::duplicate_id:
      return 409;
    case Errc::io:
      return 500;
    default:
      return 400;
  }
}

json parse_body(const Request& r) {
  json j = json::parse(r.body, nullptr, false);
  if (j.is_discarded()) throw HttpError{400, "malformed_json", "request body is not valid JSON"};
  return j;
}

template <typename T>
T get_field(const json& j, const char* key, T fallback) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw HttpError{400, "schema", fmt::format("field '{}' has the wrong type", key)};
  }
}

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw HttpError{400, "schema", fmt::format("missing field '{}'", key)};
  return *it;
}

std::string query_or(const std::map<std::string, std::string>& q, const std::string& key, std::string fallback) {
  auto it = q.find(key);
  return it == q.end() ? fallback : it->second;
}

/// Matches `prefix/{id}` and returns the id segment.
std::optional<std::string> tail_segment(std::string_view path, std::string_view prefix) {
  if (!path.starts_with(prefix) || path.size() <= prefix.size()) return std::nullopt;
  auto rest = path.substr(prefix.size());
  if (rest.find('/') != std::string_view::npos) return std::nullopt;
  return std::string(rest);
}

PlayerId player_from_path(const std::string& segment) {
  if (!is_uuid(segment)) throw HttpError{404, "unknown_player", fmt::format("no player '{}'", segment)};
  return PlayerId(segment);
}

}  // namespace

std::string percent_decode(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '+') {
      out.push_back(' ');
    } else if (c == '%' && i + 2 < text.size()) {
      int v = 0;
      auto [p, ec] = std::from_chars(text.data() + i + 1, text.data() + i + 3, v, 16);
      if (ec == std::errc{} && p == text.data() + i + 3) {
        out.push_back(static_cast<char>(v));
        i += 2;
      } else {
        out.push_back(c);
      }
    } else {
      out.push_back(c);
    }
  }
  return out;
}

std::pair<std::string, std::map<std::string, std::string>> split_target(std::string_view target) {
  std::map<std::string, std::string> query;
  const auto q = target.find('?');
  std::string path = percent_decode(target.substr(0, q));
  if (q != std::string_view::npos) {
    std::string_view rest = target.substr(q + 1);
    while (!rest.empty()) {
      const auto amp = rest.find('&');
      const auto pair = rest.substr(0, amp);
      const auto eq = pair.find('=');
      if (!pair.empty()) {
        query[percent_decode(pair.substr(0, eq))] =
            eq == std::string_view::npos ? std::string{} : percent_decode(pair.substr(eq + 1));
      }
      if (amp == std::string_view::npos) break;
      rest = rest.substr(amp + 1);
    }
  }
  return {std::move(path), std::move(query)};
}

bool Router::authorized(const Request& r) const {
  if (config_.operator_token.empty()) return false;
  auto it = r.headers.find("authorization");
  return it != r.headers.end() && it->second == "Bearer " + config_.operator_token;
}

json Router::leaderboard_payload(economy::Scope scope, Timestamp now) const {
  json entries = json::array();
  for (const auto& e : service_.leaderboard(scope, now)) entries.push_back(economy::to_json(e));
  return {{"scope", economy::to_string(scope)}, {"server_time", format_rfc3339(now)}, {"entries", entries}};
}

std::string Router::leaderboard_frame(economy::Scope scope, Timestamp now) const {
  return json{{"type", "leaderboard"}, {"payload", leaderboard_payload(scope, now)}}.dump();
}

std::string Router::badge_frame(const BadgeAward& award) {
  return json{{"type", "badge"},
              {"payload", {{"rule_id", award.rule_id}, {"player_id", award.player_id.str()}, {"at", format_rfc3339(award.at)}}}}
      .dump();
}

Response Router::handle(const Request& request) const {
  try {
    auto [path, query] = split_target(request.target);
    if (!path.starts_with(kPrefix)) return error_response(404, "not_found", "unknown route");
    return route(request, path, query);
  } catch (const HttpError& e) {
    return error_response(e.status, e.code, e.message);
  } catch (const Error& e) {
    return error_response(status_for(e.code()), to_string(e.code()), e.what());
  } catch (const json::exception& e) {
    return error_response(400, "schema", e.what());
  } catch (const std::exception& e) {
    return error_response(500, "internal", e.what());
  }
}

Response Router::route(const Request& r, const std::string& path, const std::map<std::string, std::string>& query) const {
  const std::string p = path.substr(kPrefix.size());
  const bool get = r.method == "GET";
  const bool post = r.method == "POST";
  auto method_not_allowed = [] { return error_response(405, "method_not_allowed", "method not allowed"); };
  auto guard = [&] {
    if (!authorized(r)) throw HttpError{401, "unauthorized", "operator token required"};
  };

  if (p == "/health") return get ? json_response(200, {{"status", "ok"}}) : method_not_allowed();

  if (p == "/profiles") {
    if (!post) return method_not_allowed();
    const auto profile = service_.create_profile(profile_request_from_json(parse_body(r)));
    return json_response(201, to_json(profile));
  }
  if (auto id = tail_segment(p, "/profiles/")) {
    if (!get) return method_not_allowed();
    const auto player = player_from_path(*id);
    auto profile = service_.profile(player);
    if (!profile) throw HttpError{404, "unknown_player", fmt::format("no player '{}'", *id)};
    auto j = to_json(*profile);
    j["progress"] = to_json(*service_.record(player));
    return json_response(200, j);
  }
  if (p == "/events:batch") {
    if (!post) return method_not_allowed();
    const auto env = envelope_from_json(parse_body(r), &service_.catalog());
    const auto result = service_.append_events(env);
    json badges = json::array();
    for (const auto& b : result.new_badges) badges.push_back({{"rule_id", b.rule_id}, {"at", format_rfc3339(b.at)}});
    return json_response(200, {{"accepted", result.accepted},
                               {"duplicates", result.duplicates},
                               {"last_acked_event_id", result.last_acked_event_id
                                                           ? json(result.last_acked_event_id->str())
                                                           : json(nullptr)},
                               {"new_badges", badges},
                               {"record", to_json(*result.record)}});
  }
  if (p == "/leaderboard") {
    if (!get) return method_not_allowed();
    const auto scope = economy::parse_scope(query_or(query, "scope", "all"));
    const auto now_text = query_or(query, "now", "");
    const Timestamp now = now_text.empty() ? service_.now() : parse_rfc3339(now_text);
    return json_response(200, leaderboard_payload(scope, now));
  }
  if (p == "/dashboard") {
    if (!get) return method_not_allowed();
    guard();
    return json_response(200, to_json(service_.dashboard(CohortSelector::parse(query_or(query, "cohort", "all")))));
  }
  if (auto id = tail_segment(p, "/dashboard/")) {
    if (!get) return method_not_allowed();
    guard();
    return json_response(200, to_json(service_.dashboard(player_from_path(*id))));
  }
  if (p == "/export/events") {
    if (!get) return method_not_allowed();
    guard();
    std::string body;
    for (const auto& e : service_.export_events(CohortSelector::parse(query_or(query, "cohort", "all")))) {
      body += to_json(e).dump();
      body += '\n';
    }
    return {200, "application/x-ndjson", std::move(body)};
  }
  if (p == "/catalog") {
    if (!get) return method_not_allowed();
    return json_response(200, service_.catalog().to_json());
  }
  if (p == "/grade/trace") {
    if (!post) return method_not_allowed();
    const auto body = parse_body(r);
    const auto letter = get_field<std::string>(body, "letter_id", "");
    const auto position = parse_position(get_field<std::string>(body, "position", "isolated"));
    const int attempt = get_field<int>(body, "attempt", 1);
    const auto sample = trace::sample_from_json(require(body, "sample"));
    const auto grade = trace::grade_trace(sample, service_.catalog().form(letter, position), trace::ToleranceProfile{}, attempt);
    return json_response(200, trace::to_json(grade));
  }
  if (p == "/quiz") {
    if (!post) return method_not_allowed();
    const auto body = parse_body(r);
    const int level = get_field<int>(body, "level", learning::kMinLevel);
    if (level < learning::kMinLevel || level > learning::kMaxLevel)
      throw HttpError{400, "invalid_argument", fmt::format("level {} outside 1..10", level)};
    const auto n = get_field<std::int64_t>(body, "n_items", 5);
    if (n <= 0 || n > 100) throw HttpError{400, "invalid_argument", "n_items must be in 1..100"};
    const auto params = learning::level_params(level, service_.catalog().max_complexity());
    const auto items = learning::generate_quiz(service_.catalog(), params, static_cast<std::size_t>(n),
                                               get_field<std::uint64_t>(body, "seed", 0));
    json out = json::array();
    for (const auto& it : items) out.push_back(learning::to_json(it));
    return json_response(200, {{"params",
                                {{"timer_seconds", params.timer_seconds},
                                 {"distractors", params.distractors},
                                 {"complexity_tier", params.complexity_tier}}},
                               {"items", out}});
  }
  if (p == "/quiz:score") {
    if (!post) return method_not_allowed();
    const auto body = parse_body(r);
    std::vector<learning::QuizItem> items;
    for (const auto& j : require(body, "items")) items.push_back(learning::quiz_item_from_json(j));
    std::vector<learning::Answer> answers;
    for (const auto& j : require(body, "answers")) {
      answers.push_back({get_field<std::string>(j, "chosen", ""), get_field<double>(j, "elapsed_seconds", 0.0)});
    }
    return json_response(200, {{"score", learning::score_quiz(answers, items)}});
  }
  if (p == "/matching:score") {
    if (!post) return method_not_allowed();
    const auto body = parse_body(r);
    economy::MatchingRound round;
    round.pairs = get_field<int>(body, "pairs", 3);
    round.elapsed_seconds = get_field<double>(body, "elapsed_seconds", 0.0);
    round.mistakes = get_field<int>(body, "mistakes", 0);
    return json_response(200, {{"score", economy::matching_score(round)}});
  }
  return error_response(404, "not_found", "unknown route");
}

}  // namespace hijaiyah::api
