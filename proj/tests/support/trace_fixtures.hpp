#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "hijaiyah/catalog.hpp"
#include "hijaiyah/rng.hpp"
#include "hijaiyah/trace.hpp"
#include "support/oracles.hpp"

namespace fx {

struct TraceFixture {
  std::string name;
  hijaiyah::StrokeTemplate tmpl;
  hijaiyah::trace::TraceSample sample;
};

inline hijaiyah::Polyline2d poly(std::initializer_list<std::pair<double, double>> pts) {
  hijaiyah::Polyline2d out;
  for (auto [x, y] : pts) out.emplace_back(x, y);
  return out;
}

inline hijaiyah::Polyline2d arc(double cx, double cy, double r, double a0, double a1, int n) {
  hijaiyah::Polyline2d out;
  for (int i = 0; i < n; ++i) {
    const double a = a0 + (a1 - a0) * i / (n - 1);
    out.emplace_back(cx + r * std::cos(a), cy + r * std::sin(a));
  }
  return out;
}

/// Applies the sample normalization rule so templates and exact renders coincide.
inline hijaiyah::StrokeTemplate normalized(hijaiyah::StrokeTemplate t) {
  oracle::Strokes o;
  for (const auto& st : t.strokes) {
    oracle::Line l;
    for (const auto& p : st) l.push_back({p.x(), p.y()});
    o.push_back(std::move(l));
  }
  o = oracle::normalize(o);
  for (std::size_t i = 0; i < o.size(); ++i)
    for (std::size_t j = 0; j < o[i].size(); ++j) t.strokes[i][j] = hijaiyah::Point2d(o[i][j][0], o[i][j][1]);
  return t;
}

inline hijaiyah::LetterForm form_of(const hijaiyah::StrokeTemplate& t) {
  return hijaiyah::LetterForm{"fixture", hijaiyah::Position::isolated, "?", t};
}

/// Template rendered into pixel space, optionally jittered.
inline hijaiyah::trace::TraceSample render(const std::vector<hijaiyah::Polyline2d>& strokes, double scale, double ox,
                                           double oy, double jitter, hijaiyah::Rng& rng, bool guided = true) {
  hijaiyah::trace::TraceSample s;
  s.guided = guided;
  std::int64_t t = 0;
  for (const auto& line : strokes) {
    hijaiyah::trace::SampleStroke st;
    for (const auto& p : line) {
      const double jx = jitter > 0 ? rng.normal(0, jitter) : 0.0;
      const double jy = jitter > 0 ? rng.normal(0, jitter) : 0.0;
      st.points.emplace_back(ox + scale * (p.x() + jx), oy + scale * (p.y() + jy));
      st.t.push_back(t += 16);
    }
    s.strokes.push_back(std::move(st));
  }
  return s;
}

inline std::vector<hijaiyah::Polyline2d> reversed(std::vector<hijaiyah::Polyline2d> strokes, std::size_t k) {
  std::reverse(strokes[k].begin(), strokes[k].end());
  return strokes;
}

/// Constructed templates (1..4 strokes) paired with samples covering exact,
/// jittered, reversed, reordered, missing, extra and tapped-dot strokes.
inline std::vector<TraceFixture> trace_fixtures() {
  using hijaiyah::StrokeTemplate;
  hijaiyah::Rng rng(2024);
  const double pi = std::numbers::pi;
  const std::vector<StrokeTemplate> templates = {
      {{poly({{0.5, 0.0}, {0.5, 1.0}})}, 1},
      {{poly({{1.0, 0.3}, {0.8, 0.7}, {0.2, 0.7}, {0.0, 0.3}}), poly({{0.55, 0.9}, {0.45, 0.9}})}, 3},
      {{arc(0.5, 0.5, 0.5, -pi / 2, 1.2 * pi, 17)}, 1},
      {{poly({{0.0, 0.2}, {0.3, 0.8}, {0.6, 0.2}, {1.0, 0.8}}), poly({{0.2, 0.0}, {0.8, 0.0}}),
        poly({{0.5, 0.4}, {0.5, 1.0}})},
       3},
      {{poly({{0.1, 0.1}, {0.9, 0.1}}), poly({{0.9, 0.1}, {0.9, 0.9}}), poly({{0.9, 0.9}, {0.1, 0.9}}),
        poly({{0.1, 0.9}, {0.1, 0.1}})},
       4},
      {{poly({{0.8, 0.0}, {0.6, 0.5}, {0.7, 1.0}}), poly({{0.3, 0.2}, {0.1, 0.5}})}, 2},
  };
  std::vector<TraceFixture> out;
  int k = 0;
  for (const auto& raw : templates) {
    const auto t = normalized(raw);
    const auto& s = t.strokes;
    const auto id = std::to_string(k++);
    out.push_back({"exact-" + id, t, render(s, 200, 40, 30, 0.0, rng)});
    out.push_back({"jitter-small-" + id, t, render(s, 150, 10, 90, 0.04, rng)});
    out.push_back({"jitter-large-" + id, t, render(s, 320, -50, 5, 0.18, rng, false)});
    out.push_back({"reversed-" + id, t, render(reversed(s, 0), 100, 0, 0, 0.02, rng)});
    if (s.size() > 1) {
      auto swapped = s;
      std::swap(swapped[0], swapped[1]);
      out.push_back({"swapped-" + id, t, render(swapped, 180, 7, 7, 0.03, rng)});
      auto missing = s;
      missing.pop_back();
      out.push_back({"missing-" + id, t, render(missing, 90, 3, 60, 0.01, rng)});
    }
    auto extra = s;
    extra.push_back(poly({{0.05, 0.95}, {0.95, 0.05}}));
    out.push_back({"extra-" + id, t, render(extra, 250, 12, 12, 0.05, rng)});
  }
  // A tapped dot: the second stroke has zero length.
  {
    const auto t = normalized(templates[1]);
    auto s = render(t.strokes, 200, 0, 0, 0.0, rng);
    const auto dot = s.strokes[1].points[0];
    s.strokes[1].points = {dot, dot};
    s.strokes[1].t = {500, 520};
    out.push_back({"tapped-dot", t, s});
  }
  // Off-shape: a horizontal template on the top edge against a centered horizontal sample.
  {
    const StrokeTemplate t{{poly({{0.0, 0.0}, {1.0, 0.0}})}, 1};
    out.push_back({"out-of-band", t, render({poly({{0.0, 0.5}, {1.0, 0.5}})}, 100, 0, 0, 0.0, rng)});
  }
  return out;
}

inline oracle::Strokes to_oracle(const hijaiyah::trace::TraceSample& s) {
  oracle::Strokes out;
  for (const auto& st : s.strokes) {
    oracle::Line l;
    for (const auto& p : st.points) l.push_back({p.x(), p.y()});
    out.push_back(std::move(l));
  }
  return out;
}

inline oracle::Strokes to_oracle(const hijaiyah::StrokeTemplate& t) {
  oracle::Strokes out;
  for (const auto& st : t.strokes) {
    oracle::Line l;
    for (const auto& p : st) l.push_back({p.x(), p.y()});
    out.push_back(std::move(l));
  }
  return out;
}

/// Oracle adherence for a raw (unnormalized) sample.
inline double oracle_adherence(const TraceFixture& f, double band) {
  const auto sample = oracle::normalize(to_oracle(f.sample));
  const auto tmpl = to_oracle(f.tmpl);
  return oracle::adherence(sample, tmpl, band, oracle::assign(sample, tmpl));
}

}  // namespace fx
