#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hijaiyah/ids.hpp"
#include "hijaiyah/time.hpp"

namespace hijaiyah {

class Catalog;

enum class EventKind {
  session_start,
  session_end,
  trace_graded,
  quiz_scored,
  matching_scored,
  level_changed,
  badge_awarded,
  points_awarded,
  unknown,  // preserved opaquely
};

const char* to_string(EventKind k) noexcept;
EventKind parse_event_kind(std::string_view text) noexcept;

/// The sync unit. `kind_name` keeps the wire spelling so unknown kinds round-trip.
struct SessionEvent {
  EventId event_id;
  PlayerId player_id;
  EventKind kind = EventKind::unknown;
  std::string kind_name;
  nlohmann::json payload = nlohmann::json::object();
  Timestamp client_time{};
  std::optional<Timestamp> server_time;

  bool operator==(const SessionEvent&) const = default;
};

/// Deterministic fold order: (client_time, event_id).
bool fold_order(const SessionEvent& a, const SessionEvent& b) noexcept;

nlohmann::json to_json(const SessionEvent& e);

/// Parses and validates envelope shape plus the kind-specific payload schema.
/// Throws Error{malformed_payload} naming the offending field. When `catalog`
/// is given, letter ids are checked against it.
SessionEvent event_from_json(const nlohmann::json& j, const Catalog* catalog = nullptr);
void validate_payload(const SessionEvent& e, const Catalog* catalog = nullptr);

struct SyncEnvelope {
  PlayerId player_id;
  std::vector<SessionEvent> events;
  std::optional<EventId> last_acked_event_id;
};

/// Whole-envelope validation: every event parses, belongs to `player_id`,
/// and the batch is ordered by client_time. Throws Error{malformed_payload}.
SyncEnvelope envelope_from_json(const nlohmann::json& j, const Catalog* catalog = nullptr);
nlohmann::json to_json(const SyncEnvelope& env);

}  // namespace hijaiyah
