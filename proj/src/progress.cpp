#include "hijaiyah/progress.hpp"

#include <algorithm>
#include <unordered_set>

#include "hijaiyah/learning.hpp"

namespace hijaiyah {

namespace {

void note_activity(ProgressRecord& r, Timestamp at) {
  if (!r.last_activity || *r.last_activity < at) r.last_activity = at;
}

void credit(ProgressRecord& r, PointsSource source, int score, Timestamp at) {
  r.ledger = economy::award_points(r.ledger, {source, score, at, false});
  note_activity(r, at);
}

void update_best(std::optional<int>& best, int score) { best = best ? std::max(*best, score) : score; }

void evaluation_score(ProgressRecord& r, int score, Timestamp at) { r.level = learning::next_level(r.level, score, at); }

void mastery(ProgressRecord& r, const std::string& letter, int score, Timestamp at) {
  auto& lp = r.letters[letter];
  if (!lp.mastered_at && learning::mastery_check(score)) lp.mastered_at = at;
}

void maybe_credit_challenge(ProgressRecord& r, Timestamp at, const FoldContext& ctx) {
  if (ctx.challenge_sessions_target <= 0) return;
  const IsoWeek week = iso_week(at, ctx.tz);
  const std::string key = format_iso_week(week);
  if (r.challenges_completed.contains(key)) return;
  const auto status = economy::weekly_challenge_status(
      r, {week, economy::ChallengeTarget::sessions, ctx.challenge_sessions_target, ctx.tz});
  if (!status.completed) return;
  r.challenges_completed.insert(key);
  r.ledger = economy::award_challenge(r.ledger, at);
  note_activity(r, at);
}

}  // namespace

ProgressRecord empty_record(const PlayerId& player) {
  ProgressRecord r;
  r.player_id = player;
  return r;
}

void fold_into(ProgressRecord& r, const SessionEvent& e, const FoldContext& ctx) {
  const auto& p = e.payload;
  const Timestamp at = e.client_time;
  ++r.events_folded;

  switch (e.kind) {
    case EventKind::session_start: {
      ++r.sessions.count;
      ++r.sessions.per_day[local_day(at, ctx.tz)];
      r.sessions.open[p.value("session_id", std::string{})] = at;
      maybe_credit_challenge(r, at, ctx);
      break;
    }
    case EventKind::session_end: {
      auto it = r.sessions.open.find(p.value("session_id", std::string{}));
      if (it != r.sessions.open.end()) {
        ++r.sessions.paired;
        r.sessions.total_minutes += static_cast<double>(to_unix_ms(at) - to_unix_ms(it->second)) / 60'000.0;
        r.sessions.open.erase(it);
      } else {
        ++r.sessions.unpaired_ends;
      }
      if (auto ph = p.find("phases_completed"); ph != p.end() && ph->is_array()) {
        for (const auto& name : *ph) {
          const auto phase = learning::parse_phase(name.get<std::string>());
          if (phase != learning::Phase::complete) ++r.sessions.phases_completed[static_cast<std::size_t>(phase)];
        }
      }
      break;
    }
    case EventKind::trace_graded: {
      const auto letter = p.at("letter_id").get<std::string>();
      const int score = p.at("score").get<int>();
      update_best(r.letters[letter].trace_best, score);
      credit(r, PointsSource::trace, score, at);
      if (!p.at("guided").get<bool>()) {
        evaluation_score(r, score, at);
        mastery(r, letter, score, at);
      }
      break;
    }
    case EventKind::quiz_scored: {
      const int score = p.at("score").get<int>();
      credit(r, PointsSource::quiz, score, at);
      evaluation_score(r, score, at);
      if (auto ls = p.find("letters"); ls != p.end()) {
        for (const auto& l : *ls) {
          const auto letter = l.get<std::string>();
          update_best(r.letters[letter].quiz_best, score);
          mastery(r, letter, score, at);
        }
      }
      break;
    }
    case EventKind::matching_scored: {
      const int score = p.at("score").get<int>();
      credit(r, PointsSource::matching, score, at);
      evaluation_score(r, score, at);
      break;
    }
    case EventKind::points_awarded:
      r.ledger.append({parse_points_source(p.at("source").get<std::string>()), p.at("points").get<int>(), at});
      note_activity(r, at);
      break;
    case EventKind::level_changed:
    case EventKind::badge_awarded:
      // Informational; the fold derives level and badges itself.
      break;
    case EventKind::unknown:
      ++r.opaque_events;
      break;
  }

  for (auto& award : economy::evaluate_badges(r, ctx.badge_rules, at)) r.badges.push_back(std::move(award));
}

ProgressRecord fold(const ProgressRecord& record, const SessionEvent& event, const FoldContext& ctx) {
  ProgressRecord next = record;
  fold_into(next, event, ctx);
  return next;
}

ProgressRecord fold_log(const PlayerId& player, std::span<const SessionEvent> events, const FoldContext& ctx) {
  std::vector<const SessionEvent*> ordered;
  ordered.reserve(events.size());
  for (const auto& e : events) ordered.push_back(&e);
  std::sort(ordered.begin(), ordered.end(), [](const SessionEvent* a, const SessionEvent* b) { return fold_order(*a, *b); });

  ProgressRecord r = empty_record(player);
  std::unordered_set<std::string> seen;
  for (const auto* e : ordered) {
    if (!seen.insert(e->event_id.str()).second) continue;
    fold_into(r, *e, ctx);
  }
  return r;
}

}  // namespace hijaiyah
