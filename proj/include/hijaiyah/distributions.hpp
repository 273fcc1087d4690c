#pragma once

#include <cmath>
#include <limits>

#include "hijaiyah/error.hpp"

namespace hijaiyah::stats {

/// Regularized incomplete beta I_x(a, b), continued fraction (modified Lentz).
template <typename Scalar>
Scalar incomplete_beta(Scalar a, Scalar b, Scalar x) {
  if (!(a > 0) || !(b > 0)) throw Error(Errc::invalid_argument, "incomplete_beta needs a, b > 0");
  if (x <= Scalar(0)) return Scalar(0);
  if (x >= Scalar(1)) return Scalar(1);

  const Scalar log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  // The continued fraction converges fast for x < (a + 1) / (a + b + 2); use symmetry otherwise.
  if (x > (a + Scalar(1)) / (a + b + Scalar(2))) {
    return Scalar(1) - incomplete_beta(b, a, Scalar(1) - x);
  }

  constexpr Scalar tiny = std::numeric_limits<Scalar>::min() / std::numeric_limits<Scalar>::epsilon();
  constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();
  Scalar c = 1;
  Scalar d = Scalar(1) - (a + b) * x / (a + Scalar(1));
  if (std::abs(d) < tiny) d = tiny;
  d = Scalar(1) / d;
  Scalar h = d;
  for (int m = 1; m <= 10000; ++m) {
    const Scalar m2 = Scalar(2 * m);
    Scalar num = Scalar(m) * (b - Scalar(m)) * x / ((a + m2 - Scalar(1)) * (a + m2));
    d = Scalar(1) + num * d;
    if (std::abs(d) < tiny) d = tiny;
    c = Scalar(1) + num / c;
    if (std::abs(c) < tiny) c = tiny;
    d = Scalar(1) / d;
    h *= d * c;
    num = -(a + Scalar(m)) * (a + b + Scalar(m)) * x / ((a + m2) * (a + m2 + Scalar(1)));
    d = Scalar(1) + num * d;
    if (std::abs(d) < tiny) d = tiny;
    c = Scalar(1) + num / c;
    if (std::abs(c) < tiny) c = tiny;
    d = Scalar(1) / d;
    const Scalar delta = d * c;
    h *= delta;
    if (std::abs(delta - Scalar(1)) < eps) break;
  }
  return std::exp(log_front) * h / a;
}

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
template <typename Scalar>
Scalar student_t_two_sided_p(Scalar t, Scalar df) {
  if (!(df > 0)) throw Error(Errc::invalid_argument, "degrees of freedom must be positive");
  if (std::isnan(t)) return std::numeric_limits<Scalar>::quiet_NaN();
  if (std::isinf(t)) return Scalar(0);
  return incomplete_beta(df / Scalar(2), Scalar(0.5), df / (df + t * t));
}

/// Lower-tail CDF of Student's t.
template <typename Scalar>
Scalar student_t_cdf(Scalar t, Scalar df) {
  const Scalar tail = student_t_two_sided_p(t, df) / Scalar(2);
  return t >= Scalar(0) ? Scalar(1) - tail : tail;
}

}  // namespace hijaiyah::stats
