#include "hijaiyah/record.hpp"

#include <fmt/format.h>

#include "hijaiyah/error.hpp"

namespace hijaiyah {

using nlohmann::json;

const char* to_string(PointsSource s) noexcept {
  switch (s) {
    case PointsSource::trace: return "trace";
    case PointsSource::quiz: return "quiz";
    case PointsSource::matching: return "matching";
    case PointsSource::challenge: return "challenge";
  }
  return "?";
}

PointsSource parse_points_source(std::string_view text) {
  for (auto s : {PointsSource::trace, PointsSource::quiz, PointsSource::matching, PointsSource::challenge}) {
    if (text == to_string(s)) return s;
  }
  throw Error(Errc::schema, fmt::format("unknown points source '{}'", text));
}

void PointsLedger::append(PointsEntry e) {
  if (e.points < 0) throw Error(Errc::invalid_argument, "points must be non-negative");
  total_ += e.points;
  entries_.push_back(e);
}

int SessionStats::longest_streak() const noexcept {
  int best = 0;
  int run = 0;
  std::int64_t prev = 0;
  for (const auto& [day, n] : per_day) {
    run = (run > 0 && day == prev + 1) ? run + 1 : 1;
    best = std::max(best, run);
    prev = day;
  }
  return best;
}

bool ProgressRecord::has_badge(std::string_view rule_id) const noexcept {
  for (const auto& b : badges) {
    if (b.rule_id == rule_id) return true;
  }
  return false;
}

std::size_t ProgressRecord::mastered_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [id, lp] : letters) n += lp.mastered_at.has_value() ? 1 : 0;
  return n;
}

namespace {

json opt_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }
json opt_time(const std::optional<Timestamp>& v) { return v ? json(format_rfc3339(*v)) : json(nullptr); }

std::optional<int> read_opt_int(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<int>();
}
std::optional<Timestamp> read_opt_time(const json& j) {
  if (j.is_null()) return std::nullopt;
  return parse_rfc3339(j.get<std::string>());
}

}  // namespace

json to_json(const ProgressRecord& r) {
  json letters = json::object();
  for (const auto& [id, lp] : r.letters) {
    letters[id] = {{"trace_best", opt_int(lp.trace_best)},
                   {"quiz_best", opt_int(lp.quiz_best)},
                   {"mastered_at", opt_time(lp.mastered_at)}};
  }
  json history = json::array();
  for (const auto& h : r.level.history) history.push_back({h.score, format_rfc3339(h.at)});
  json ledger = json::array();
  for (const auto& e : r.ledger.entries()) {
    ledger.push_back({{"source", to_string(e.source)}, {"points", e.points}, {"at", format_rfc3339(e.at)}});
  }
  json badges = json::array();
  for (const auto& b : r.badges) badges.push_back({{"rule_id", b.rule_id}, {"at", format_rfc3339(b.at)}});
  json per_day = json::array();
  for (const auto& [day, n] : r.sessions.per_day) per_day.push_back({day, n});
  json open = json::object();
  for (const auto& [id, t] : r.sessions.open) open[id] = format_rfc3339(t);

  return {{"player_id", r.player_id.str()},
          {"letters", std::move(letters)},
          {"level", r.level.level},
          {"level_history", std::move(history)},
          {"ledger", std::move(ledger)},
          {"total_points", r.ledger.total()},
          {"badges", std::move(badges)},
          {"sessions",
           {{"count", r.sessions.count},
            {"paired", r.sessions.paired},
            {"total_minutes", r.sessions.total_minutes},
            {"per_day", std::move(per_day)},
            {"phases_completed", r.sessions.phases_completed},
            {"unpaired_ends", r.sessions.unpaired_ends},
            {"open", std::move(open)}}},
          {"challenges_completed", r.challenges_completed},
          {"last_activity", opt_time(r.last_activity)},
          {"events_folded", r.events_folded},
          {"opaque_events", r.opaque_events}};
}

ProgressRecord record_from_json(const json& j) {
  try {
    ProgressRecord r;
    r.player_id = PlayerId(j.at("player_id").get<std::string>());
    for (const auto& [id, lj] : j.at("letters").items()) {
      r.letters[id] = {read_opt_int(lj.at("trace_best")), read_opt_int(lj.at("quiz_best")),
                       read_opt_time(lj.at("mastered_at"))};
    }
    r.level.level = j.at("level").get<int>();
    for (const auto& h : j.at("level_history")) {
      r.level.history.push_back({h.at(0).get<int>(), parse_rfc3339(h.at(1).get<std::string>())});
    }
    for (const auto& e : j.at("ledger")) {
      r.ledger.append({parse_points_source(e.at("source").get<std::string>()), e.at("points").get<int>(),
                       parse_rfc3339(e.at("at").get<std::string>())});
    }
    for (const auto& b : j.at("badges")) {
      r.badges.push_back({b.at("rule_id").get<std::string>(), r.player_id, parse_rfc3339(b.at("at").get<std::string>())});
    }
    const auto& s = j.at("sessions");
    r.sessions.count = s.at("count").get<int>();
    r.sessions.paired = s.at("paired").get<int>();
    r.sessions.total_minutes = s.at("total_minutes").get<double>();
    for (const auto& d : s.at("per_day")) r.sessions.per_day[d.at(0).get<std::int64_t>()] = d.at(1).get<int>();
    r.sessions.phases_completed = s.at("phases_completed").get<std::array<int, 3>>();
    r.sessions.unpaired_ends = s.at("unpaired_ends").get<int>();
    for (const auto& [id, t] : s.at("open").items()) r.sessions.open[id] = parse_rfc3339(t.get<std::string>());
    r.challenges_completed = j.at("challenges_completed").get<std::set<std::string>>();
    r.last_activity = read_opt_time(j.at("last_activity"));
    r.events_folded = j.at("events_folded").get<std::size_t>();
    r.opaque_events = j.at("opaque_events").get<std::size_t>();
    return r;
  } catch (const json::exception& e) {
    throw Error(Errc::schema, fmt::format("progress record: {}", e.what()));
  }
}

}  // namespace hijaiyah
