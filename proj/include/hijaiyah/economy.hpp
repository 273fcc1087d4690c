#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hijaiyah/record.hpp"
#include "hijaiyah/time.hpp"

namespace hijaiyah::economy {

inline constexpr int kChallengeBonus = 20;

// --- points -----------------------------------------------------------------

struct ActivityResult {
  PointsSource source = PointsSource::quiz;
  int score = 0;
  Timestamp at{};
  bool challenge_completed = false;
};

/// One point per activity-score point, plus a +20 challenge entry when the
/// activity completed a challenge. Throws Error{invalid_argument} for scores outside 0..100.
PointsLedger award_points(const PointsLedger& ledger, const ActivityResult& result);

/// Appends the +20 challenge bonus alone.
PointsLedger award_challenge(const PointsLedger& ledger, Timestamp at);

// --- matching game ------------------------------------------------------------

struct MatchingRound {
  int pairs = 3;               // 3..4 pairs, i.e. 6..8 cards
  double elapsed_seconds = 0;
  int mistakes = 0;

  int cards() const noexcept { return 2 * pairs; }
};

/// clamp(100 - 1/s * elapsed - 5 * mistakes, 0, 100), rounded to an integer.
int matching_score(const MatchingRound& round);

// --- badges -------------------------------------------------------------------

enum class BadgeKind {
  letter_mastered,
  all_letters_mastered,
  sessions,
  streak_days,
  challenges_completed,
  points_total,
  level_reached,
};

struct BadgeRule {
  std::string id;
  BadgeKind kind = BadgeKind::sessions;
  nlohmann::json params = nlohmann::json::object();
  std::string title;
  int tier = 1;

  bool holds(const ProgressRecord& record) const;
};

std::vector<BadgeRule> badge_rules_from_json(const nlohmann::json& j);
std::vector<BadgeRule> load_badge_rules(const std::string& path);

/// Rules whose predicate holds on `record` and that the record has not been awarded yet,
/// in rule order.
std::vector<BadgeAward> evaluate_badges(const ProgressRecord& record, std::span<const BadgeRule> rules,
                                        Timestamp at);

// --- weekly challenges --------------------------------------------------------

enum class ChallengeTarget { sessions, letters_mastered };

struct WeekSpec {
  IsoWeek week;
  ChallengeTarget target_kind = ChallengeTarget::sessions;
  int target = 3;
  UtcOffset tz{};
};

struct ChallengeStatus {
  bool completed = false;
  double progress = 0.0;
};

/// progress = min(achieved / target, 1). Throws Error{degenerate_challenge} for target <= 0.
ChallengeStatus weekly_challenge_status(const ProgressRecord& record, const WeekSpec& spec);

// --- leaderboard --------------------------------------------------------------

enum class Scope { daily, weekly, all_time };
const char* to_string(Scope s) noexcept;
Scope parse_scope(std::string_view text);

struct LedgerView {
  PlayerId player_id;
  std::string display_name;
  const PointsLedger* ledger = nullptr;
};

struct LeaderboardEntry {
  PlayerId player_id;
  std::string display_name;
  std::int64_t points_in_scope = 0;
  Timestamp last_activity{};
  int rank = 0;
  bool operator==(const LeaderboardEntry&) const = default;
};

nlohmann::json to_json(const LeaderboardEntry& e);

/// Players with at least one ledger entry inside the scope window, ordered by
/// points desc, then earlier last activity, then player id. Ranks are 1..n.
std::vector<LeaderboardEntry> leaderboard(Scope scope, Timestamp now, std::span<const LedgerView> ledgers,
                                          UtcOffset tz = {});

}  // namespace hijaiyah::economy
