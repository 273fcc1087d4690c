#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "hijaiyah/ids.hpp"
#include "hijaiyah/learning.hpp"
#include "hijaiyah/time.hpp"

namespace hijaiyah {

enum class PointsSource { trace, quiz, matching, challenge };
const char* to_string(PointsSource s) noexcept;
PointsSource parse_points_source(std::string_view text);

struct PointsEntry {
  PointsSource source = PointsSource::trace;
  int points = 0;
  Timestamp at{};
  bool operator==(const PointsEntry&) const = default;
};

/// Append-only points history; `total()` is always the entry sum.
class PointsLedger {
 public:
  void append(PointsEntry e);
  const std::vector<PointsEntry>& entries() const noexcept { return entries_; }
  std::int64_t total() const noexcept { return total_; }
  bool operator==(const PointsLedger&) const = default;

 private:
  std::vector<PointsEntry> entries_;
  std::int64_t total_ = 0;
};

struct BadgeAward {
  std::string rule_id;
  PlayerId player_id;
  Timestamp at{};
  bool operator==(const BadgeAward&) const = default;
};

struct LetterProgress {
  std::optional<int> trace_best;
  std::optional<int> quiz_best;
  std::optional<Timestamp> mastered_at;  // first evaluation score >= 80
  bool operator==(const LetterProgress&) const = default;
};

struct SessionStats {
  int count = 0;           // session_start events
  int paired = 0;          // session_end matched to a start
  double total_minutes = 0.0;
  std::map<std::int64_t, int> per_day;  // local day -> session starts
  std::array<int, 3> phases_completed{};  // introduction, practice, evaluation
  int unpaired_ends = 0;
  std::map<std::string, Timestamp> open;  // session_id -> start time
  bool operator==(const SessionStats&) const = default;

  int active_days() const noexcept { return static_cast<int>(per_day.size()); }
  int longest_streak() const noexcept;
};

/// Per-player state derived by folding the event log.
struct ProgressRecord {
  PlayerId player_id;
  std::map<std::string, LetterProgress> letters;
  learning::LevelState level;
  PointsLedger ledger;
  std::vector<BadgeAward> badges;
  SessionStats sessions;
  std::set<std::string> challenges_completed;  // ISO week keys credited with the bonus
  std::optional<Timestamp> last_activity;      // latest points-bearing event
  std::size_t events_folded = 0;
  std::size_t opaque_events = 0;

  bool operator==(const ProgressRecord&) const = default;

  bool has_badge(std::string_view rule_id) const noexcept;
  std::size_t mastered_count() const noexcept;
};

nlohmann::json to_json(const ProgressRecord& r);
ProgressRecord record_from_json(const nlohmann::json& j);

}  // namespace hijaiyah
