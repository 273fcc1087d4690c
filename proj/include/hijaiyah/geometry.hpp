#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "hijaiyah/error.hpp"

namespace hijaiyah {

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using Polyline = std::vector<Point2<Scalar>>;

using Point2d = Point2<double>;
using Polyline2d = Polyline<double>;

template <typename Scalar>
Scalar arc_length(std::span<const Point2<Scalar>> line) {
  Scalar total(0);
  for (std::size_t i = 1; i < line.size(); ++i) total += (line[i] - line[i - 1]).norm();
  return total;
}

/// Euclidean distance from `p` to the closed segment [a, b].
template <typename Scalar>
Scalar point_segment_distance(const Point2<Scalar>& p, const Point2<Scalar>& a,
                              const Point2<Scalar>& b) {
  const Point2<Scalar> ab = b - a;
  const Scalar len2 = ab.squaredNorm();
  if (len2 == Scalar(0)) return (p - a).norm();
  const Scalar s = std::clamp((p - a).dot(ab) / len2, Scalar(0), Scalar(1));
  return (p - (a + s * ab)).norm();
}

/// Distance from `p` to the nearest point of the polyline (continuous, not vertex-only).
template <typename Scalar>
Scalar point_polyline_distance(const Point2<Scalar>& p, std::span<const Point2<Scalar>> line) {
  if (line.size() == 1) return (p - line.front()).norm();
  Scalar best = std::numeric_limits<Scalar>::infinity();
  for (std::size_t i = 1; i < line.size(); ++i) {
    best = std::min(best, point_segment_distance<Scalar>(p, line[i - 1], line[i]));
  }
  return best;
}

/// `n` points at equal arc-length spacing along `line`; endpoints are kept exactly.
template <typename Scalar>
Polyline<Scalar> resample(std::span<const Point2<Scalar>> line, std::size_t n) {
  if (n < 2) throw Error(Errc::invalid_argument, "resample needs n >= 2");
  const Scalar total = line.size() < 2 ? Scalar(0) : arc_length<Scalar>(line);
  if (!(total > Scalar(0))) throw Error(Errc::degenerate_input, "zero-length polyline");

  Polyline<Scalar> out;
  out.reserve(n);
  out.push_back(line.front());
  std::size_t seg = 1;
  Scalar walked(0);  // arc length at line[seg - 1]
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const Scalar target = total * static_cast<Scalar>(k) / static_cast<Scalar>(n - 1);
    Scalar seg_len = (line[seg] - line[seg - 1]).norm();
    while (walked + seg_len < target && seg + 1 < line.size()) {
      walked += seg_len;
      ++seg;
      seg_len = (line[seg] - line[seg - 1]).norm();
    }
    const Scalar s = seg_len > Scalar(0) ? std::clamp((target - walked) / seg_len, Scalar(0), Scalar(1))
                                         : Scalar(0);
    out.push_back(line[seg - 1] + s * (line[seg] - line[seg - 1]));
  }
  out.push_back(line.back());
  return out;
}

template <typename Scalar>
struct BoundingBox {
  Point2<Scalar> min = Point2<Scalar>::Constant(std::numeric_limits<Scalar>::infinity());
  Point2<Scalar> max = Point2<Scalar>::Constant(-std::numeric_limits<Scalar>::infinity());

  void extend(const Point2<Scalar>& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  Point2<Scalar> extent() const { return max - min; }
};

}  // namespace hijaiyah
