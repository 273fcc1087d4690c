#include "hijaiyah/economy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <fmt/format.h>

#include "hijaiyah/catalog.hpp"
#include "hijaiyah/error.hpp"

namespace hijaiyah::economy {

using nlohmann::json;

PointsLedger award_points(const PointsLedger& ledger, const ActivityResult& result) {
  if (result.score < 0 || result.score > 100) {
    throw Error(Errc::invalid_argument, fmt::format("activity score {} outside 0..100", result.score));
  }
  PointsLedger out = ledger;
  out.append({result.source, result.score, result.at});
  if (result.challenge_completed) out.append({PointsSource::challenge, kChallengeBonus, result.at});
  return out;
}

PointsLedger award_challenge(const PointsLedger& ledger, Timestamp at) {
  PointsLedger out = ledger;
  out.append({PointsSource::challenge, kChallengeBonus, at});
  return out;
}

int matching_score(const MatchingRound& round) {
  if (round.pairs < 3 || round.pairs > 4 || round.mistakes < 0 || !(round.elapsed_seconds >= 0.0)) {
    throw Error(Errc::invalid_argument, "matching round needs 3..4 pairs, mistakes >= 0, elapsed >= 0");
  }
  const double raw = 100.0 - round.elapsed_seconds - 5.0 * round.mistakes;
  return static_cast<int>(std::lround(std::clamp(raw, 0.0, 100.0)));
}

// --- badges -------------------------------------------------------------------

namespace {

struct KindName {
  BadgeKind kind;
  const char* name;
};

constexpr KindName kKinds[] = {
    {BadgeKind::letter_mastered, "letter_mastered"},
    {BadgeKind::all_letters_mastered, "all_letters_mastered"},
    {BadgeKind::sessions, "sessions"},
    {BadgeKind::streak_days, "streak_days"},
    {BadgeKind::challenges_completed, "challenges_completed"},
    {BadgeKind::points_total, "points_total"},
    {BadgeKind::level_reached, "level_reached"},
};

std::int64_t param_int(const BadgeRule& rule, const char* key, std::int64_t fallback) {
  auto it = rule.params.find(key);
  return (it != rule.params.end() && it->is_number_integer()) ? it->get<std::int64_t>() : fallback;
}

const char* required_param(BadgeKind kind) {
  switch (kind) {
    case BadgeKind::letter_mastered: return "letter";
    case BadgeKind::sessions:
    case BadgeKind::challenges_completed: return "count";
    case BadgeKind::streak_days: return "days";
    case BadgeKind::points_total: return "points";
    case BadgeKind::level_reached: return "level";
    case BadgeKind::all_letters_mastered: return nullptr;
  }
  return nullptr;
}

}  // namespace

bool BadgeRule::holds(const ProgressRecord& record) const {
  switch (kind) {
    case BadgeKind::letter_mastered: {
      auto it = record.letters.find(params.value("letter", std::string{}));
      return it != record.letters.end() && it->second.mastered_at.has_value();
    }
    case BadgeKind::all_letters_mastered:
      return static_cast<std::int64_t>(record.mastered_count()) >=
             param_int(*this, "count", static_cast<std::int64_t>(kLetterCount));
    case BadgeKind::sessions: return record.sessions.count >= param_int(*this, "count", 1);
    case BadgeKind::streak_days: return record.sessions.longest_streak() >= param_int(*this, "days", 1);
    case BadgeKind::challenges_completed:
      return static_cast<std::int64_t>(record.challenges_completed.size()) >= param_int(*this, "count", 1);
    case BadgeKind::points_total: return record.ledger.total() >= param_int(*this, "points", 0);
    case BadgeKind::level_reached: return record.level.level >= param_int(*this, "level", 1);
  }
  return false;
}

std::vector<BadgeRule> badge_rules_from_json(const json& j) {
  if (!j.is_array()) throw Error(Errc::schema, "badge rules: expected array");
  std::vector<BadgeRule> rules;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto& rj = j[i];
    const auto where = fmt::format("badge rules[{}]", i);
    if (!rj.is_object() || !rj.contains("id") || !rj["id"].is_string() || !rj.contains("kind") ||
        !rj["kind"].is_string()) {
      throw Error(Errc::schema, where + ": needs string id and kind");
    }
    BadgeRule rule;
    rule.id = rj["id"].get<std::string>();
    const auto kind = rj["kind"].get<std::string>();
    const auto* hit = std::find_if(std::begin(kKinds), std::end(kKinds), [&](const KindName& k) { return kind == k.name; });
    if (hit == std::end(kKinds)) throw Error(Errc::schema, fmt::format("{}.kind: unknown '{}'", where, kind));
    rule.kind = hit->kind;
    rule.params = rj.value("params", json::object());
    if (const char* key = required_param(rule.kind); key && !rule.params.contains(key)) {
      throw Error(Errc::schema, fmt::format("{}.params.{}: missing", where, key));
    }
    rule.title = rj.value("title", rule.id);
    rule.tier = rj.value("tier", 1);
    for (const auto& existing : rules) {
      if (existing.id == rule.id) throw Error(Errc::duplicate_id, fmt::format("duplicate badge id '{}'", rule.id));
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<BadgeRule> load_badge_rules(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::io, "cannot open badge rules " + path);
  try {
    return badge_rules_from_json(json::parse(in));
  } catch (const json::parse_error& e) {
    throw Error(Errc::schema, fmt::format("badge rules: {}", e.what()));
  }
}

std::vector<BadgeAward> evaluate_badges(const ProgressRecord& record, std::span<const BadgeRule> rules,
                                        Timestamp at) {
  std::vector<BadgeAward> out;
  for (const auto& rule : rules) {
    if (!record.has_badge(rule.id) && rule.holds(record)) out.push_back({rule.id, record.player_id, at});
  }
  return out;
}

// --- weekly challenges --------------------------------------------------------

ChallengeStatus weekly_challenge_status(const ProgressRecord& record, const WeekSpec& spec) {
  if (spec.target <= 0) throw Error(Errc::degenerate_challenge, "degenerate challenge: target must be positive");
  const std::int64_t first = iso_week_monday(spec.week);
  const std::int64_t last = first + 7;
  int achieved = 0;
  if (spec.target_kind == ChallengeTarget::sessions) {
    for (auto it = record.sessions.per_day.lower_bound(first); it != record.sessions.per_day.end() && it->first < last;
         ++it) {
      achieved += it->second;
    }
  } else {
    for (const auto& [id, lp] : record.letters) {
      if (!lp.mastered_at) continue;
      const auto day = local_day(*lp.mastered_at, spec.tz);
      if (day >= first && day < last) ++achieved;
    }
  }
  ChallengeStatus status;
  status.progress = std::min(static_cast<double>(achieved) / spec.target, 1.0);
  status.completed = status.progress >= 1.0;
  return status;
}

// --- leaderboard --------------------------------------------------------------

const char* to_string(Scope s) noexcept {
  switch (s) {
    case Scope::daily: return "daily";
    case Scope::weekly: return "weekly";
    case Scope::all_time: return "all";
  }
  return "?";
}

Scope parse_scope(std::string_view text) {
  if (text == "daily") return Scope::daily;
  if (text == "weekly") return Scope::weekly;
  if (text == "all" || text == "all_time") return Scope::all_time;
  throw Error(Errc::invalid_argument, fmt::format("unknown leaderboard scope '{}'", text));
}

json to_json(const LeaderboardEntry& e) {
  return {{"rank", e.rank},
          {"player_id", e.player_id.str()},
          {"display_name", e.display_name},
          {"points", e.points_in_scope},
          {"last_activity", format_rfc3339(e.last_activity)}};
}

std::vector<LeaderboardEntry> leaderboard(Scope scope, Timestamp now, std::span<const LedgerView> ledgers,
                                          UtcOffset tz) {
  Timestamp from = Timestamp::min();
  Timestamp to = Timestamp::max();
  if (scope == Scope::daily) {
    from = local_day_start(now, tz);
    to = from + std::chrono::days(1);
  } else if (scope == Scope::weekly) {
    from = local_week_start(now, tz);
    to = from + std::chrono::days(7);
  }

  std::vector<LeaderboardEntry> rows;
  for (const auto& view : ledgers) {
    if (!view.ledger) continue;
    LeaderboardEntry row{view.player_id, view.display_name, 0, Timestamp::min(), 0};
    bool any = false;
    for (const auto& e : view.ledger->entries()) {
      if (e.at < from || e.at >= to) continue;
      any = true;
      row.points_in_scope += e.points;
      row.last_activity = std::max(row.last_activity, e.at);
    }
    if (any) rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const LeaderboardEntry& a, const LeaderboardEntry& b) {
    if (a.points_in_scope != b.points_in_scope) return a.points_in_scope > b.points_in_scope;
    if (a.last_activity != b.last_activity) return a.last_activity < b.last_activity;
    return a.player_id < b.player_id;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = static_cast<int>(i) + 1;
  return rows;
}

}  // namespace hijaiyah::economy
