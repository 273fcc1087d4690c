#include "hijaiyah/trace.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "hijaiyah/error.hpp"

namespace hijaiyah::trace {

using nlohmann::json;

void TraceSample::validate() const {
  if (strokes.empty()) throw Error(Errc::schema, "trace sample has no strokes");
  for (std::size_t s = 0; s < strokes.size(); ++s) {
    const auto& st = strokes[s];
    if (st.points.size() < 2) throw Error(Errc::schema, fmt::format("strokes[{}]: needs >= 2 points", s));
    if (!st.t.empty() && st.t.size() != st.points.size()) {
      throw Error(Errc::schema, fmt::format("strokes[{}]: t length differs from points", s));
    }
    for (std::size_t i = 1; i < st.t.size(); ++i) {
      if (st.t[i] < st.t[i - 1]) throw Error(Errc::schema, fmt::format("strokes[{}]: timestamps decrease", s));
    }
    for (const auto& p : st.points) {
      if (!std::isfinite(p.x()) || !std::isfinite(p.y())) {
        throw Error(Errc::schema, fmt::format("strokes[{}]: non-finite coordinate", s));
      }
    }
  }
}

TraceSample sample_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::schema, "trace sample must be an object");
  TraceSample s;
  if (auto it = j.find("guided"); it != j.end()) {
    if (!it->is_boolean()) throw Error(Errc::schema, "guided: expected boolean");
    s.guided = it->get<bool>();
  }
  auto it = j.find("strokes");
  if (it == j.end() || !it->is_array()) throw Error(Errc::schema, "strokes: expected array");
  for (std::size_t k = 0; k < it->size(); ++k) {
    const auto& sj = (*it)[k];
    SampleStroke st;
    auto pts = sj.find("points");
    if (!sj.is_object() || pts == sj.end() || !pts->is_array()) {
      throw Error(Errc::schema, fmt::format("strokes[{}].points: expected array", k));
    }
    for (const auto& p : *pts) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw Error(Errc::schema, fmt::format("strokes[{}].points: expected [x, y]", k));
      }
      st.points.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    if (auto t = sj.find("t"); t != sj.end()) {
      if (!t->is_array()) throw Error(Errc::schema, fmt::format("strokes[{}].t: expected array", k));
      for (const auto& v : *t) {
        if (!v.is_number()) throw Error(Errc::schema, fmt::format("strokes[{}].t: expected numbers", k));
        st.t.push_back(v.get<std::int64_t>());
      }
    }
    s.strokes.push_back(std::move(st));
  }
  s.validate();
  return s;
}

json to_json(const TraceSample& s) {
  json strokes = json::array();
  for (const auto& st : s.strokes) {
    json pts = json::array();
    for (const auto& p : st.points) pts.push_back({p.x(), p.y()});
    strokes.push_back({{"points", std::move(pts)}, {"t", st.t}});
  }
  return {{"guided", s.guided}, {"strokes", std::move(strokes)}};
}

json to_json(const TraceGrade& g) {
  json per = json::array();
  for (const auto& m : g.per_stroke) {
    per.push_back({{"matched_template_stroke", m.matched_template_stroke},
                   {"mean_deviation", m.mean_deviation},
                   {"max_deviation", m.max_deviation}});
  }
  return {{"adherence", g.adherence},
          {"order_correct", g.order_correct},
          {"score", g.score},
          {"bonus_awarded", g.bonus_awarded},
          {"per_stroke", std::move(per)}};
}

void ToleranceProfile::validate() const {
  if (!(band > 0.0 && band < 1.0)) throw Error(Errc::invalid_argument, "tolerance band must be in (0, 1)");
  if (!(pass_fraction > 0.0 && pass_fraction <= 1.0)) {
    throw Error(Errc::invalid_argument, "pass_fraction must be in (0, 1]");
  }
  if (!(adaptive_slack >= 0.0) || !(slack_cap >= 0.0 && slack_cap <= 0.10)) {
    throw Error(Errc::invalid_argument, "adaptive slack must be >= 0 with cap <= 0.10");
  }
}

double ToleranceProfile::effective_band(int attempt) const {
  if (attempt < 1) throw Error(Errc::invalid_argument, "attempt must be >= 1");
  return std::min(band + adaptive_slack * (attempt - 1), band + slack_cap);
}

TraceSample normalize(const TraceSample& sample) {
  sample.validate();
  BoundingBox<double> box;
  for (const auto& st : sample.strokes) {
    for (const auto& p : st.points) box.extend(p);
  }
  const Point2d size = box.extent();
  const double extent = size.maxCoeff();
  if (!(extent > 0.0)) throw Error(Errc::degenerate_input, "degenerate sample: bounding box has zero extent");

  const double scale = 1.0 / extent;
  const Point2d offset = (Point2d::Ones() - size * scale) / 2.0;
  TraceSample out = sample;
  for (auto& st : out.strokes) {
    for (auto& p : st.points) p = ((p - box.min) * scale + offset).eval();
  }
  return out;
}

namespace {

Point2d stroke_direction(std::span<const Point2d> line) {
  Point2d d = line.back() - line.front();
  if (d.norm() > 1e-9) return d;
  // Closed stroke: fall back to the vector toward the quarter-arc point. The
  // midpoint would not separate the two senses of a symmetric loop.
  if (arc_length<double>(line) > 0.0) {
    const auto q = resample<double>(line, 5);
    return q[1] - q[0];
  }
  return d;
}

}  // namespace

OrderCheck stroke_order_check(const TraceSample& sample, const StrokeTemplate& tmpl) {
  OrderCheck out;
  std::vector<bool> consumed(tmpl.strokes.size(), false);
  for (const auto& st : sample.strokes) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < tmpl.strokes.size(); ++j) {
      if (consumed[j]) continue;
      const double d = (st.points.front() - tmpl.strokes[j].front()).norm();
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(j);
      }
    }
    if (best >= 0) consumed[static_cast<std::size_t>(best)] = true;
    out.assignment.push_back(best);
  }

  out.order_correct = sample.strokes.size() == tmpl.strokes.size();
  for (std::size_t i = 0; out.order_correct && i < out.assignment.size(); ++i) {
    if (out.assignment[i] != static_cast<int>(i)) {
      out.order_correct = false;
      break;
    }
    const Point2d ds = stroke_direction(sample.strokes[i].points);
    const Point2d dt = stroke_direction(tmpl.strokes[i]);
    if (!(ds.dot(dt) > 0.0)) out.order_correct = false;
  }
  return out;
}

double path_adherence(const TraceSample& sample, const StrokeTemplate& tmpl, double band,
                      std::span<const int> assignment, std::vector<StrokeMatch>* per_stroke) {
  if (assignment.size() != sample.strokes.size()) {
    throw Error(Errc::length_mismatch, "assignment does not cover every sample stroke");
  }
  const double limit = band * std::numbers::sqrt2;
  std::size_t inside = 0;
  if (per_stroke) per_stroke->clear();

  for (std::size_t i = 0; i < sample.strokes.size(); ++i) {
    StrokeMatch match;
    match.matched_template_stroke = assignment[i];
    const auto& pts = sample.strokes[i].points;
    if (assignment[i] >= 0 && arc_length<double>(pts) > 0.0) {
      const auto& target = tmpl.strokes[static_cast<std::size_t>(assignment[i])];
      const auto resampled = resample<double>(pts, kResamplePoints);
      double sum = 0.0;
      for (const auto& p : resampled) {
        const double d = point_polyline_distance<double>(p, target);
        sum += d;
        match.max_deviation = std::max(match.max_deviation, d);
        if (d <= limit) ++inside;
      }
      match.mean_deviation = sum / static_cast<double>(resampled.size());
    } else if (assignment[i] >= 0) {
      // A zero-length stroke (a tapped dot) is scored at its single location.
      const auto& target = tmpl.strokes[static_cast<std::size_t>(assignment[i])];
      const double d = point_polyline_distance<double>(pts.front(), target);
      match.mean_deviation = match.max_deviation = d;
      if (d <= limit) inside += kResamplePoints;
    }
    if (per_stroke) per_stroke->push_back(match);
  }

  const std::size_t strokes = std::max(sample.strokes.size(), tmpl.strokes.size());
  return static_cast<double>(inside) / static_cast<double>(strokes * kResamplePoints);
}

double path_adherence(const TraceSample& sample, const StrokeTemplate& tmpl, const ToleranceProfile& tol) {
  tol.validate();
  const auto order = stroke_order_check(sample, tmpl);
  return path_adherence(sample, tmpl, tol.band, order.assignment);
}

TraceGrade grade_trace(const TraceSample& sample, const LetterForm& form, const ToleranceProfile& tol,
                       int attempt) {
  tol.validate();
  const double band = tol.effective_band(attempt);
  const TraceSample norm = normalize(sample);
  const auto& tmpl = form.stroke_template;
  const auto order = stroke_order_check(norm, tmpl);

  TraceGrade grade;
  grade.order_correct = order.order_correct;
  grade.adherence = path_adherence(norm, tmpl, band, order.assignment, &grade.per_stroke);
  grade.bonus_awarded = grade.adherence >= tol.pass_fraction && grade.order_correct;
  grade.score = static_cast<int>(std::lround(80.0 * grade.adherence)) + (grade.bonus_awarded ? 20 : 0);
  return grade;
}

}  // namespace hijaiyah::trace
