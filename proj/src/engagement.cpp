#include <algorithm>
#include <charconv>
#include <set>
#include <string_view>
#include <unordered_set>

#include <fmt/format.h>

#include "hijaiyah/analytics.hpp"
#include "hijaiyah/error.hpp"

namespace hijaiyah::analytics {

namespace {

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(std::move(cell));
  for (auto& s : cells) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  }
  return cells;
}

double parse_number(const std::string& cell, std::size_t line_no, std::size_t col) {
  double v = 0;
  const auto* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (cell.empty() || ec != std::errc() || ptr != end) {
    throw Error(Errc::schema, fmt::format("csv line {} column {}: '{}' is not a number", line_no, col + 1, cell));
  }
  return v;
}

std::int64_t week_monday(std::int64_t day) {
  // 1970-01-01 was a Thursday.
  std::int64_t offset = (day + 3) % 7;
  if (offset < 0) offset += 7;
  return day - offset;
}

}  // namespace

std::vector<ScorePair> read_score_pairs_csv(std::istream& in) {
  std::vector<ScorePair> pairs;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (header) {
      header = false;
      if (cells.size() != 3 || cells[0] != "subject_id" || cells[1] != "pre" || cells[2] != "post") {
        throw Error(Errc::schema, "score csv header must be 'subject_id,pre,post'");
      }
      continue;
    }
    if (cells.size() != 3) throw Error(Errc::schema, fmt::format("csv line {}: expected 3 columns", line_no));
    ScorePair p{cells[0], parse_number(cells[1], line_no, 1), parse_number(cells[2], line_no, 2)};
    if (p.pre < 0 || p.pre > 100 || p.post < 0 || p.post > 100) {
      throw Error(Errc::schema, fmt::format("csv line {}: scores must be in 0..100", line_no));
    }
    pairs.push_back(std::move(p));
  }
  if (header) throw Error(Errc::schema, "score csv is empty");
  return pairs;
}

ItemResponses read_items_csv(std::istream& in) {
  ItemResponses out;
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::size_t k = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_csv_line(line);
    if (k == 0) {
      if (cells.size() < 2 || cells[0] != "subject_id") {
        throw Error(Errc::schema, "item csv header must be 'subject_id,item_1,...'");
      }
      k = cells.size() - 1;
      continue;
    }
    if (cells.size() != k + 1) {
      throw Error(Errc::schema, fmt::format("csv line {}: expected {} columns (rectangular matrix)", line_no, k + 1));
    }
    out.subject_ids.push_back(cells[0]);
    std::vector<double> row;
    for (std::size_t j = 1; j < cells.size(); ++j) row.push_back(parse_number(cells[j], line_no, j));
    rows.push_back(std::move(row));
  }
  if (k == 0) throw Error(Errc::schema, "item csv is empty");
  out.items.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(k));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) out.items(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return out;
}

EngagementReport engagement_report(std::span<const SessionEvent> log, std::span<const ScorePair> pairs,
                                   const EngagementConfig& config) {
  std::vector<const SessionEvent*> events;
  std::unordered_set<std::string> seen;
  for (const auto& e : log) {
    if (seen.insert(e.event_id.str()).second) events.push_back(&e);
  }
  std::sort(events.begin(), events.end(), [](const SessionEvent* a, const SessionEvent* b) {
    if (a->player_id != b->player_id) return a->player_id < b->player_id;
    return fold_order(*a, *b);
  });

  EngagementReport report;
  std::optional<std::int64_t> first_monday;
  for (const auto* e : events) {
    if (e->kind == EventKind::session_start) {
      const auto m = week_monday(local_day(e->client_time, config.tz));
      if (!first_monday || m < *first_monday) first_monday = m;
    }
  }
  struct WeekAcc {
    int sessions = 0;
    int paired = 0;
    double minutes = 0;
    std::set<std::string> students;
  };
  std::map<int, WeekAcc> weeks;
  auto week_index = [&](Timestamp t) {
    return static_cast<int>((week_monday(local_day(t, config.tz)) - *first_monday) / 7) + 1;
  };

  std::size_t i = 0;
  while (i < events.size()) {
    const auto& player = events[i]->player_id;
    StudentEngagement s;
    s.player_id = player.str();
    std::set<std::int64_t> days;
    std::map<std::string, Timestamp> open;
    std::map<std::int64_t, int> starts_per_week;
    std::set<std::string> badges;
    for (; i < events.size() && events[i]->player_id == player; ++i) {
      const auto& e = *events[i];
      const auto& p = e.payload;
      switch (e.kind) {
        case EventKind::session_start: {
          ++s.sessions;
          const auto day = local_day(e.client_time, config.tz);
          days.insert(day);
          open[p.value("session_id", std::string{})] = e.client_time;
          if (++starts_per_week[week_monday(day)] == config.challenge_sessions_target &&
              config.challenge_sessions_target > 0) {
            s.points += config.challenge_bonus;
          }
          auto& w = weeks[week_index(e.client_time)];
          ++w.sessions;
          w.students.insert(s.player_id);
          break;
        }
        case EventKind::session_end: {
          auto it = open.find(p.value("session_id", std::string{}));
          if (it == open.end()) {
            ++report.unpaired_ends;
            break;
          }
          const double minutes = static_cast<double>(to_unix_ms(e.client_time) - to_unix_ms(it->second)) / 60'000.0;
          ++s.paired_sessions;
          s.total_minutes += minutes;
          auto& w = weeks[week_index(it->second)];
          ++w.paired;
          w.minutes += minutes;
          open.erase(it);
          break;
        }
        case EventKind::trace_graded:
        case EventKind::quiz_scored:
        case EventKind::matching_scored:
          s.points += p.value("score", 0);
          break;
        case EventKind::points_awarded:
          s.points += p.value("points", std::int64_t{0});
          break;
        case EventKind::badge_awarded:
          badges.insert(p.value("rule_id", std::string{}));
          break;
        default:
          break;
      }
    }
    report.unpaired_starts += static_cast<int>(open.size());
    s.active_days = static_cast<int>(days.size());
    s.distinct_badges = static_cast<int>(badges.size());
    report.per_student.push_back(std::move(s));
  }

  report.students = report.per_student.size();
  std::vector<double> per_day;
  std::vector<double> minutes;
  std::vector<double> points;
  int over_5 = 0;
  for (const auto& s : report.per_student) {
    if (s.sessions > 0) per_day.push_back(static_cast<double>(s.sessions) / s.active_days);
    if (s.paired_sessions > 0) minutes.push_back(s.total_minutes / s.paired_sessions);
    points.push_back(static_cast<double>(s.points));
    report.total_points += s.points;
    ++report.badge_distribution[s.distinct_badges];
    if (s.distinct_badges > 5) ++over_5;
  }
  report.sessions_per_day = stats::mean_sd(std::span<const double>(per_day));
  report.session_minutes = stats::mean_sd(std::span<const double>(minutes));
  report.points_per_student = stats::mean_sd(std::span<const double>(points));
  if (report.students > 0) report.fraction_over_5_badges = static_cast<double>(over_5) / report.students;
  if (!pairs.empty()) {
    const auto mastered = std::count_if(pairs.begin(), pairs.end(), [](const ScorePair& p) { return p.post >= 80; });
    report.fraction_post_mastery = static_cast<double>(mastered) / static_cast<double>(pairs.size());
  }
  if (!weeks.empty()) {
    for (int w = 1; w <= weeks.rbegin()->first; ++w) {
      const auto it = weeks.find(w);
      WeeklyPoint pt{w, 0, 0.0, 0};
      if (it != weeks.end()) {
        pt.sessions = it->second.sessions;
        pt.mean_minutes = it->second.paired > 0 ? it->second.minutes / it->second.paired : 0.0;
        pt.active_students = static_cast<int>(it->second.students.size());
      }
      report.weekly_series.push_back(pt);
    }
  }
  return report;
}

}  // namespace hijaiyah::analytics
