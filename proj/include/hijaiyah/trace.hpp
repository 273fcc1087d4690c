#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "hijaiyah/catalog.hpp"
#include "hijaiyah/geometry.hpp"

namespace hijaiyah::trace {

inline constexpr std::size_t kResamplePoints = 64;

struct SampleStroke {
  Polyline2d points;
  std::vector<std::int64_t> t;  // ms, nondecreasing
};

/// A learner's captured strokes. `guided` is true when dotted guides were shown.
struct TraceSample {
  std::vector<SampleStroke> strokes;
  bool guided = true;

  /// Throws Error{schema} on any invariant violation.
  void validate() const;
};

TraceSample sample_from_json(const nlohmann::json& j);
nlohmann::json to_json(const TraceSample& s);

struct ToleranceProfile {
  double band = 0.20;           // fraction of the template diagonal
  double pass_fraction = 0.95;  // fraction of points in band required for the bonus
  double adaptive_slack = 0.02; // band widening per failed attempt
  double slack_cap = 0.10;

  void validate() const;
  double effective_band(int attempt) const;
};

struct StrokeMatch {
  int matched_template_stroke = -1;  // -1 when unassigned
  double mean_deviation = 0.0;
  double max_deviation = 0.0;
  bool operator==(const StrokeMatch&) const = default;
};

struct TraceGrade {
  double adherence = 0.0;
  bool order_correct = false;
  int score = 0;
  bool bonus_awarded = false;
  std::vector<StrokeMatch> per_stroke;

  bool operator==(const TraceGrade&) const = default;
};

nlohmann::json to_json(const TraceGrade& g);

struct OrderCheck {
  bool order_correct = false;
  std::vector<int> assignment;  // template stroke index per sample stroke, -1 if none left
};

/// Maps the sample's bounding box into [0,1]^2, longer side spanning [0,1]
/// and the shorter side centered. Throws Error{degenerate_input} for a
/// zero-extent sample.
TraceSample normalize(const TraceSample& sample);

/// Greedy nearest-start assignment plus a per-stroke direction test.
OrderCheck stroke_order_check(const TraceSample& sample, const StrokeTemplate& tmpl);

/// Fraction of resampled sample points within `band * sqrt(2)` of their
/// assigned template stroke. Unassigned sample strokes and unmatched template
/// strokes contribute kResamplePoints out-of-band points each.
double path_adherence(const TraceSample& sample, const StrokeTemplate& tmpl, double band,
                      std::span<const int> assignment, std::vector<StrokeMatch>* per_stroke = nullptr);
double path_adherence(const TraceSample& sample, const StrokeTemplate& tmpl, const ToleranceProfile& tol);

/// Full grading: normalize, order check, adherence at the attempt's effective band.
TraceGrade grade_trace(const TraceSample& sample, const LetterForm& form, const ToleranceProfile& tol,
                       int attempt = 1);

}  // namespace hijaiyah::trace
