#include "hijaiyah/events.hpp"

#include <fmt/format.h>

#include "hijaiyah/catalog.hpp"
#include "hijaiyah/error.hpp"
#include "hijaiyah/learning.hpp"
#include "hijaiyah/record.hpp"

namespace hijaiyah {

using nlohmann::json;

namespace {

constexpr std::pair<EventKind, const char*> kKindNames[] = {
    {EventKind::session_start, "session_start"},     {EventKind::session_end, "session_end"},
    {EventKind::trace_graded, "trace_graded"},       {EventKind::quiz_scored, "quiz_scored"},
    {EventKind::matching_scored, "matching_scored"}, {EventKind::level_changed, "level_changed"},
    {EventKind::badge_awarded, "badge_awarded"},     {EventKind::points_awarded, "points_awarded"},
};

[[noreturn]] void malformed(const std::string& where, std::string_view what) {
  throw Error(Errc::malformed_payload, fmt::format("malformed event at {}: {}", where, what));
}

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) malformed(where + "." + key, "missing");
  return *it;
}

void require_string(const json& obj, const char* key, const std::string& where) {
  if (!field(obj, key, where).is_string()) malformed(where + "." + key, "expected string");
}

void require_score(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number_integer() || v.get<int>() < 0 || v.get<int>() > 100) {
    malformed(where + "." + key, "expected integer score 0..100");
  }
}

void optional_letters(const json& obj, const std::string& where, const Catalog* catalog) {
  auto it = obj.find("letters");
  if (it == obj.end()) return;
  if (!it->is_array()) malformed(where + ".letters", "expected array");
  for (const auto& l : *it) {
    if (!l.is_string()) malformed(where + ".letters", "expected letter ids");
    if (catalog && !catalog->contains(l.get<std::string>())) malformed(where + ".letters", "unknown letter id");
  }
}

}  // namespace

const char* to_string(EventKind k) noexcept {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

EventKind parse_event_kind(std::string_view text) noexcept {
  for (const auto& [kind, name] : kKindNames) {
    if (text == name) return kind;
  }
  return EventKind::unknown;
}

bool fold_order(const SessionEvent& a, const SessionEvent& b) noexcept {
  if (a.client_time != b.client_time) return a.client_time < b.client_time;
  return a.event_id < b.event_id;
}

json to_json(const SessionEvent& e) {
  json j = {{"event_id", e.event_id.str()},
            {"player_id", e.player_id.str()},
            {"kind", e.kind_name},
            {"payload", e.payload},
            {"client_time", format_rfc3339(e.client_time)}};
  if (e.server_time) j["server_time"] = format_rfc3339(*e.server_time);
  return j;
}

void validate_payload(const SessionEvent& e, const Catalog* catalog) {
  const std::string where = fmt::format("{}({}).payload", e.kind_name, e.event_id.str());
  const json& p = e.payload;
  if (!p.is_object()) malformed(where, "expected object");
  switch (e.kind) {
    case EventKind::session_start:
      require_string(p, "session_id", where);
      break;
    case EventKind::session_end:
      require_string(p, "session_id", where);
      if (auto it = p.find("phases_completed"); it != p.end()) {
        if (!it->is_array()) malformed(where + ".phases_completed", "expected array");
        for (const auto& ph : *it) {
          if (!ph.is_string()) malformed(where + ".phases_completed", "expected phase names");
          try {
            if (learning::parse_phase(ph.get<std::string>()) == learning::Phase::complete) {
              malformed(where + ".phases_completed", "'complete' is not a phase");
            }
          } catch (const Error& err) {
            if (err.code() == Errc::malformed_payload) throw;
            malformed(where + ".phases_completed", err.what());
          }
        }
      }
      break;
    case EventKind::trace_graded: {
      require_string(p, "letter_id", where);
      if (catalog && !catalog->contains(p["letter_id"].get<std::string>())) {
        malformed(where + ".letter_id", "unknown letter id");
      }
      require_score(p, "score", where);
      if (!field(p, "guided", where).is_boolean()) malformed(where + ".guided", "expected boolean");
      break;
    }
    case EventKind::quiz_scored:
    case EventKind::matching_scored:
      require_score(p, "score", where);
      optional_letters(p, where, catalog);
      break;
    case EventKind::level_changed:
      for (const char* key : {"from", "to"}) {
        const auto& v = field(p, key, where);
        if (!v.is_number_integer() || v.get<int>() < learning::kMinLevel || v.get<int>() > learning::kMaxLevel) {
          malformed(where + "." + key, "expected level 1..10");
        }
      }
      break;
    case EventKind::badge_awarded:
      require_string(p, "rule_id", where);
      break;
    case EventKind::points_awarded: {
      require_string(p, "source", where);
      try {
        parse_points_source(p["source"].get<std::string>());
      } catch (const Error& err) {
        malformed(where + ".source", err.what());
      }
      const auto& v = field(p, "points", where);
      if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() > 1'000'000) {
        malformed(where + ".points", "expected non-negative integer");
      }
      break;
    }
    case EventKind::unknown:
      break;
  }
}

SessionEvent event_from_json(const json& j, const Catalog* catalog) {
  if (!j.is_object()) malformed("event", "expected object");
  SessionEvent e;
  try {
    for (const char* key : {"event_id", "player_id", "kind", "client_time"}) {
      if (!j.contains(key) || !j[key].is_string()) malformed(std::string("event.") + key, "expected string");
    }
    e.event_id = EventId(j["event_id"].get<std::string>());
    e.player_id = PlayerId(j["player_id"].get<std::string>());
    e.kind_name = j["kind"].get<std::string>();
    e.kind = parse_event_kind(e.kind_name);
    e.client_time = parse_rfc3339(j["client_time"].get<std::string>());
    if (auto it = j.find("server_time"); it != j.end() && !it->is_null()) {
      e.server_time = parse_rfc3339(it->get<std::string>());
    }
  } catch (const Error& err) {
    if (err.code() == Errc::malformed_payload) throw;
    malformed("event", err.what());
  }
  e.payload = j.value("payload", json::object());
  validate_payload(e, catalog);
  return e;
}

SyncEnvelope envelope_from_json(const json& j, const Catalog* catalog) {
  if (!j.is_object() || !j.contains("player_id") || !j["player_id"].is_string()) {
    malformed("envelope.player_id", "expected string");
  }
  SyncEnvelope env;
  try {
    env.player_id = PlayerId(j["player_id"].get<std::string>());
    if (auto it = j.find("last_acked_event_id"); it != j.end() && !it->is_null()) {
      env.last_acked_event_id = EventId(it->get<std::string>());
    }
  } catch (const Error& err) {
    malformed("envelope", err.what());
  }
  const auto it = j.find("events");
  if (it == j.end() || !it->is_array()) malformed("envelope.events", "expected array");
  for (std::size_t i = 0; i < it->size(); ++i) {
    SessionEvent e = event_from_json((*it)[i], catalog);
    if (e.player_id != env.player_id) malformed(fmt::format("envelope.events[{}].player_id", i), "differs from envelope");
    if (!env.events.empty() && e.client_time < env.events.back().client_time) {
      malformed(fmt::format("envelope.events[{}].client_time", i), "batch not ordered by client_time");
    }
    env.events.push_back(std::move(e));
  }
  return env;
}

json to_json(const SyncEnvelope& env) {
  json events = json::array();
  for (const auto& e : env.events) events.push_back(to_json(e));
  json j = {{"player_id", env.player_id.str()}, {"events", std::move(events)}};
  j["last_acked_event_id"] = env.last_acked_event_id ? json(env.last_acked_event_id->str()) : json(nullptr);
  return j;
}

}  // namespace hijaiyah
