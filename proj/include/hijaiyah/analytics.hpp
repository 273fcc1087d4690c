#pragma once

#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hijaiyah/events.hpp"
#include "hijaiyah/stats.hpp"
#include "hijaiyah/time.hpp"

namespace hijaiyah::analytics {

struct ScorePair {
  std::string subject_id;
  double pre = 0;
  double post = 0;
};

/// `subject_id,pre,post` with a header row. Throws Error{schema}.
std::vector<ScorePair> read_score_pairs_csv(std::istream& in);

struct ItemResponses {
  std::vector<std::string> subject_ids;
  stats::Matrix<double> items;  // respondents x items
};

/// `subject_id,item_1,...,item_k` with a header row. Throws Error{schema}.
ItemResponses read_items_csv(std::istream& in);

// --- engagement -----------------------------------------------------------------

struct EngagementConfig {
  UtcOffset tz{};
  int challenge_sessions_target = 3;
  int challenge_bonus = 20;
};

struct StudentEngagement {
  std::string player_id;
  int sessions = 0;
  int active_days = 0;
  int paired_sessions = 0;
  double total_minutes = 0;
  std::int64_t points = 0;
  int distinct_badges = 0;
};

struct WeeklyPoint {
  int week = 0;  // 1-based, relative to the cohort's first session week
  int sessions = 0;
  double mean_minutes = 0;
  int active_students = 0;
};

struct EngagementReport {
  std::size_t students = 0;
  stats::MeanSd<double> sessions_per_day;  // per student, over active days
  stats::MeanSd<double> session_minutes;   // per student mean duration
  std::int64_t total_points = 0;
  stats::MeanSd<double> points_per_student;
  std::map<int, int> badge_distribution;   // distinct badges -> students
  double fraction_over_5_badges = 0;
  std::optional<double> fraction_post_mastery;
  std::vector<WeeklyPoint> weekly_series;
  int unpaired_starts = 0;
  int unpaired_ends = 0;
  std::vector<StudentEngagement> per_student;  // sorted by player id
};

/// Aggregates recomputed from the raw event log (duplicates by event_id
/// dropped); independent of the progress-sync fold.
EngagementReport engagement_report(std::span<const SessionEvent> log, std::span<const ScorePair> pairs = {},
                                   const EngagementConfig& config = {});

// --- report ----------------------------------------------------------------------

inline constexpr double kReferenceCohensD = 4.87;

struct StatsReport {
  std::size_t n = 0;
  std::optional<stats::MeanSd<double>> pre;
  std::optional<stats::MeanSd<double>> post;
  std::optional<double> improvement_pct;
  std::optional<double> t_paired;
  std::optional<double> df;
  std::optional<double> p_value;
  std::optional<double> cohens_d_pooled;
  std::optional<double> cohens_d_paired;
  std::optional<double> d_from_t;  // t / sqrt(n)
  double reference_d = kReferenceCohensD;
  std::optional<double> pearson_points_post;
  std::optional<double> pearson_p;
  std::optional<double> cronbach_alpha;
  std::optional<std::size_t> alpha_items;
  std::optional<stats::RegressionResult<double>> regression;  // post ~ badges + (-rank) + points
  std::vector<std::string> notes;
};

StatsReport stats_report(std::span<const ScorePair> pairs, const EngagementReport* engagement = nullptr,
                         const ItemResponses* items = nullptr);

nlohmann::json to_json(const StatsReport& report);
nlohmann::json to_json(const EngagementReport& report);

/// Text table with the pre/post result rows followed by engagement lines.
std::string format_report(const StatsReport& stats, const EngagementReport& engagement);
std::string weekly_series_csv(const EngagementReport& engagement);

}  // namespace hijaiyah::analytics
