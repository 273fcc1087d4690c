#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "hijaiyah/analytics.hpp"
#include "hijaiyah/error.hpp"

namespace hijaiyah::analytics {

using nlohmann::json;

namespace {

std::size_t display_width(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

std::string pad(std::string_view s, std::size_t width) {
  std::string out(s);
  for (auto w = display_width(s); w < width; ++w) out.push_back(' ');
  return out;
}

std::string format_p(double p) {
  if (p < 0.001) return "< 0.001";
  return fmt::format("{:.4f}", p);
}

json opt(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

Eigen::Map<const stats::Vector<double>> map_vec(const std::vector<double>& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

}  // namespace

StatsReport stats_report(std::span<const ScorePair> pairs, const EngagementReport* engagement,
                         const ItemResponses* items) {
  StatsReport r;
  r.n = pairs.size();

  if (items && items->items.rows() > 0) {
    r.alpha_items = static_cast<std::size_t>(items->items.cols());
    try {
      r.cronbach_alpha = stats::cronbach_alpha(items->items);
    } catch (const Error& e) {
      r.notes.push_back(fmt::format("Cronbach's alpha not computable: {}", e.what()));
    }
  }

  if (pairs.empty()) {
    r.notes.push_back("no data: no pre/post score pairs supplied");
    return r;
  }

  std::vector<double> pre, post;
  for (const auto& p : pairs) {
    pre.push_back(p.pre);
    post.push_back(p.post);
  }
  r.pre = stats::mean_sd(map_vec(pre));
  r.post = stats::mean_sd(map_vec(post));
  try {
    r.improvement_pct = stats::improvement_pct(r.pre->mean, r.post->mean);
  } catch (const Error& e) {
    r.notes.push_back(fmt::format("improvement not computable: {}", e.what()));
  }

  try {
    const auto t = stats::paired_t(map_vec(pre), map_vec(post));
    r.t_paired = t.t;
    r.df = static_cast<double>(t.df);
    r.p_value = t.p_two_sided;
    r.d_from_t = t.t / std::sqrt(static_cast<double>(r.n));
    r.cohens_d_paired = stats::cohens_d(map_vec(pre), map_vec(post), stats::EffectSize::paired);
  } catch (const Error& e) {
    r.notes.push_back(fmt::format("paired t-test not computable: {}", e.what()));
  }
  try {
    r.cohens_d_pooled = stats::cohens_d(map_vec(pre), map_vec(post), stats::EffectSize::pooled);
  } catch (const Error& e) {
    r.notes.push_back(fmt::format("pooled Cohen's d not computable: {}", e.what()));
  }
  r.notes.push_back(fmt::format(
      "reference effect size d = {:.2f} is not reproduced by the pooled, paired-difference or t/sqrt(n) "
      "conventions; all three are reported",
      r.reference_d));

  if (engagement) {
    std::map<std::string, const StudentEngagement*> by_id;
    for (const auto& s : engagement->per_student) by_id[s.player_id] = &s;
    std::vector<const ScorePair*> joined;
    for (const auto& p : pairs) {
      if (by_id.contains(p.subject_id)) joined.push_back(&p);
    }
    if (joined.size() >= 3) {
      std::vector<double> pts, badges, y;
      for (const auto* p : joined) {
        pts.push_back(static_cast<double>(by_id[p->subject_id]->points));
        badges.push_back(by_id[p->subject_id]->distinct_badges);
        y.push_back(p->post);
      }
      // Final leaderboard rank among the joined subjects; rank 1 = most points.
      std::vector<std::size_t> order(joined.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pts[a] != pts[b]) return pts[a] > pts[b];
        return joined[a]->subject_id < joined[b]->subject_id;
      });
      std::vector<double> neg_rank(joined.size());
      for (std::size_t k = 0; k < order.size(); ++k) neg_rank[order[k]] = -static_cast<double>(k + 1);

      try {
        const auto c = stats::pearson_r(map_vec(pts), map_vec(y));
        r.pearson_points_post = c.r;
        r.pearson_p = c.p;
      } catch (const Error& e) {
        r.notes.push_back(fmt::format("Pearson r not computable: {}", e.what()));
      }
      stats::Matrix<double> X(static_cast<Eigen::Index>(joined.size()), 3);
      X.col(0) = map_vec(badges);
      X.col(1) = map_vec(neg_rank);
      X.col(2) = map_vec(pts);
      try {
        r.regression = stats::ols_standardized(X, map_vec(y));
      } catch (const Error& e) {
        r.notes.push_back(fmt::format("regression not computable: {}", e.what()));
      }
    }
  }
  return r;
}

json to_json(const StatsReport& r) {
  auto msd = [](const std::optional<stats::MeanSd<double>>& m) {
    return m ? json{{"mean", m->mean}, {"sd", m->sd}, {"n", m->n}} : json(nullptr);
  };
  json reg = nullptr;
  if (r.regression) {
    static const char* kNames[] = {"badges", "leaderboard_rank", "total_points"};
    json preds = json::array();
    for (Eigen::Index j = 0; j < r.regression->coefficients.size(); ++j) {
      preds.push_back({{"predictor", kNames[j]},
                       {"b", r.regression->coefficients(j)},
                       {"beta", r.regression->standardized(j)},
                       {"t", opt(r.regression->t_values(j))},
                       {"p", opt(r.regression->p_values(j))}});
    }
    reg = {{"intercept", r.regression->intercept},
           {"r_squared", r.regression->r_squared},
           {"df_residual", r.regression->df_residual},
           {"predictors", std::move(preds)}};
  }
  return {{"n", r.n},
          {"pre", msd(r.pre)},
          {"post", msd(r.post)},
          {"improvement_pct", opt(r.improvement_pct)},
          {"t_paired", opt(r.t_paired)},
          {"df", opt(r.df)},
          {"p_value", opt(r.p_value)},
          {"cohens_d_pooled", opt(r.cohens_d_pooled)},
          {"cohens_d_paired", opt(r.cohens_d_paired)},
          {"cohens_d_from_t", opt(r.d_from_t)},
          {"cohens_d_reference", r.reference_d},
          {"pearson_points_post", opt(r.pearson_points_post)},
          {"pearson_p", opt(r.pearson_p)},
          {"cronbach_alpha", opt(r.cronbach_alpha)},
          {"alpha_items", r.alpha_items ? json(*r.alpha_items) : json(nullptr)},
          {"regression", std::move(reg)},
          {"notes", r.notes}};
}

json to_json(const EngagementReport& e) {
  auto msd = [](const stats::MeanSd<double>& m) { return json{{"mean", m.mean}, {"sd", m.sd}, {"n", m.n}}; };
  json dist = json::object();
  for (const auto& [k, v] : e.badge_distribution) dist[std::to_string(k)] = v;
  json series = json::array();
  for (const auto& w : e.weekly_series) {
    series.push_back({{"week", w.week},
                      {"sessions", w.sessions},
                      {"mean_minutes", w.mean_minutes},
                      {"active_students", w.active_students}});
  }
  return {{"students", e.students},
          {"sessions_per_day", msd(e.sessions_per_day)},
          {"session_minutes", msd(e.session_minutes)},
          {"total_points", e.total_points},
          {"points_per_student", msd(e.points_per_student)},
          {"badge_distribution", std::move(dist)},
          {"fraction_over_5_badges", e.fraction_over_5_badges},
          {"fraction_post_mastery", e.fraction_post_mastery ? json(*e.fraction_post_mastery) : json(nullptr)},
          {"weekly_series", std::move(series)},
          {"unpaired_starts", e.unpaired_starts},
          {"unpaired_ends", e.unpaired_ends}};
}

std::string format_report(const StatsReport& r, const EngagementReport& e) {
  constexpr std::size_t kLabel = 26;
  constexpr std::size_t kCell = 16;
  std::ostringstream out;
  auto row = [&](std::string_view label, std::string_view a, std::string_view b = {}, std::string_view c = {}) {
    std::string line = pad(label, kLabel) + "| " + pad(a, kCell) + "| " + pad(b, kCell) + "| " + std::string(c);
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  const std::string na = "n/a";
  auto num = [&](const std::optional<double>& v, const char* spec) {
    return v && std::isfinite(*v) ? fmt::format(fmt::runtime(spec), *v) : na;
  };

  out << fmt::format("Pre-test and Post-test Results (N = {})\n", r.n);
  row("Metric", "Pre-test", "Post-test", "Improvement");
  if (r.pre && r.post) {
    row("Mean Score (± SD)", fmt::format("{:.1f} ± {:.1f}", r.pre->mean, r.pre->sd),
        fmt::format("{:.1f} ± {:.1f}", r.post->mean, r.post->sd),
        fmt::format("{:+.1f} points", r.post->mean - r.pre->mean));
  } else {
    row("Mean Score (± SD)", na, na, na);
  }
  row("Improvement (%)", r.improvement_pct ? fmt::format("{:.1f}%", *r.improvement_pct) : na);
  row("Paired t-value", r.t_paired ? fmt::format("{:.2f} (df = {:.0f})", *r.t_paired, *r.df) : na);
  row("p-value", r.p_value ? format_p(*r.p_value) : na);
  row("Cohen’s d (effect size)", num(r.cohens_d_pooled, "{:.3f} pooled"), num(r.cohens_d_paired, "{:.3f} paired"),
      num(r.d_from_t, "{:.3f} t/sqrt(n)"));
  out << fmt::format("  reference d = {:.2f} (documented discrepancy: not derivable from the statistics above)\n",
                     r.reference_d);

  out << "\nEngagement\n";
  out << fmt::format("  Students: {}\n", e.students);
  out << fmt::format("  Sessions per day: {:.1f} ± {:.1f} sessions per student\n", e.sessions_per_day.mean,
                     e.sessions_per_day.sd);
  out << fmt::format("  Session duration: {:.1f} ± {:.1f} minutes\n", e.session_minutes.mean, e.session_minutes.sd);
  out << fmt::format("  Total points: {} (mean {:.0f} ± {:.0f} points/student)\n", e.total_points,
                     e.points_per_student.mean, e.points_per_student.sd);
  out << fmt::format("  Students with more than 5 distinct badges: {:.1f}%\n", 100.0 * e.fraction_over_5_badges);
  if (e.fraction_post_mastery) {
    out << fmt::format("  Post-test mastery (score >= 80): {:.1f}%\n", 100.0 * *e.fraction_post_mastery);
  }
  if (e.unpaired_starts || e.unpaired_ends) {
    out << fmt::format("  Unpaired session events: {} starts, {} ends\n", e.unpaired_starts, e.unpaired_ends);
  }

  out << "\nReliability and correlation\n";
  out << "  Cronbach’s α: "
      << (r.cronbach_alpha ? fmt::format("{:.3f} ({} items)", *r.cronbach_alpha, *r.alpha_items) : na) << '\n';
  out << "  Pearson r (points vs post-test): "
      << (r.pearson_points_post ? fmt::format("{:.3f} (p {})", *r.pearson_points_post,
                                              r.pearson_p && *r.pearson_p < 0.001 ? "< 0.001"
                                                                                  : "= " + format_p(*r.pearson_p))
                                : na)
      << '\n';
  if (r.regression) {
    out << fmt::format("  Regression β (R² = {:.3f}): badges {:.2f}, leaderboard rank {:.2f}, total points {:.2f}\n",
                       r.regression->r_squared, r.regression->standardized(0), r.regression->standardized(1),
                       r.regression->standardized(2));
  } else {
    out << "  Regression β: n/a\n";
  }

  out << "\nWeekly engagement\n";
  out << weekly_series_csv(e);
  if (!r.notes.empty()) {
    out << "\nNotes\n";
    for (const auto& n : r.notes) out << "  - " << n << '\n';
  }
  return out.str();
}

std::string weekly_series_csv(const EngagementReport& e) {
  std::string out = "week,sessions,mean_minutes,active_students\n";
  for (const auto& w : e.weekly_series) {
    out += fmt::format("{},{},{:.2f},{}\n", w.week, w.sessions, w.mean_minutes, w.active_students);
  }
  return out;
}

}  // namespace hijaiyah::analytics
