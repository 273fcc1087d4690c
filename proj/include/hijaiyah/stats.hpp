#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hijaiyah/distributions.hpp"
#include "hijaiyah/error.hpp"

namespace hijaiyah::stats {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// --- descriptive ----------------------------------------------------------------

template <typename Derived>
typename Derived::Scalar mean(const Eigen::MatrixBase<Derived>& x) {
  if (x.size() == 0) throw Error(Errc::invalid_argument, "mean of empty sample");
  return x.mean();
}

/// Sample variance, n - 1 denominator (two-pass).
template <typename Derived>
typename Derived::Scalar sample_variance(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  if (x.size() < 2) throw Error(Errc::invalid_argument, "sample variance needs n >= 2");
  const Scalar m = x.mean();
  return (x.array() - m).square().sum() / Scalar(x.size() - 1);
}

template <typename Derived>
typename Derived::Scalar sample_sd(const Eigen::MatrixBase<Derived>& x) {
  return std::sqrt(sample_variance(x));
}

/// True when a variance is zero up to rounding for data of magnitude `scale`.
template <typename Scalar>
bool degenerate_variance(Scalar variance, Scalar scale) {
  const Scalar floor = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * std::max(Scalar(1), scale);
  return !(variance > floor * floor);
}

template <typename Scalar>
struct MeanSd {
  Scalar mean = 0;
  Scalar sd = 0;  // 0 when n < 2
  Eigen::Index n = 0;
};

template <typename Derived>
MeanSd<typename Derived::Scalar> mean_sd(const Eigen::MatrixBase<Derived>& x) {
  MeanSd<typename Derived::Scalar> out;
  out.n = x.size();
  if (out.n == 0) return out;
  out.mean = x.mean();
  if (out.n >= 2) out.sd = sample_sd(x);
  return out;
}

inline MeanSd<double> mean_sd(std::span<const double> values) {
  return mean_sd(Eigen::Map<const Vector<double>>(values.data(), static_cast<Eigen::Index>(values.size())));
}

// --- paired comparison ----------------------------------------------------------

template <typename Scalar>
struct PairedT {
  Scalar t = 0;
  Eigen::Index df = 0;
  Scalar p_two_sided = 1;
  Scalar mean_diff = 0;
  Scalar sd_diff = 0;
};

/// t = mean(post - pre) / (sd(post - pre) / sqrt(n)), df = n - 1.
template <typename DerivedA, typename DerivedB>
PairedT<typename DerivedA::Scalar> paired_t(const Eigen::MatrixBase<DerivedA>& pre,
                                            const Eigen::MatrixBase<DerivedB>& post) {
  using Scalar = typename DerivedA::Scalar;
  if (pre.size() != post.size()) throw Error(Errc::length_mismatch, "paired samples differ in length");
  if (pre.size() < 2) throw Error(Errc::invalid_argument, "paired t-test needs n >= 2");
  const Vector<Scalar> diff = post - pre;
  const Scalar var = sample_variance(diff);
  const Scalar scale = std::max(pre.cwiseAbs().maxCoeff(), post.cwiseAbs().maxCoeff());
  if (degenerate_variance(var, scale)) throw Error(Errc::zero_variance, "paired differences have zero variance");

  PairedT<Scalar> out;
  const auto n = diff.size();
  out.mean_diff = diff.mean();
  out.sd_diff = std::sqrt(var);
  out.df = n - 1;
  out.t = out.mean_diff / (out.sd_diff / std::sqrt(Scalar(n)));
  out.p_two_sided = student_t_two_sided_p(out.t, Scalar(out.df));
  return out;
}

enum class EffectSize { pooled, paired };

/// pooled: (m_post - m_pre) / sqrt((sd_pre^2 + sd_post^2) / 2); paired: mean(diff) / sd(diff).
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar cohens_d(const Eigen::MatrixBase<DerivedA>& pre, const Eigen::MatrixBase<DerivedB>& post,
                                   EffectSize method) {
  using Scalar = typename DerivedA::Scalar;
  if (pre.size() != post.size()) throw Error(Errc::length_mismatch, "paired samples differ in length");
  const Scalar scale = std::max(pre.cwiseAbs().maxCoeff(), post.cwiseAbs().maxCoeff());
  if (method == EffectSize::paired) {
    const Vector<Scalar> diff = post - pre;
    const Scalar var = sample_variance(diff);
    if (degenerate_variance(var, scale)) throw Error(Errc::zero_variance, "paired differences have zero variance");
    return diff.mean() / std::sqrt(var);
  }
  const Scalar v_pre = sample_variance(pre);
  const Scalar v_post = sample_variance(post);
  if (degenerate_variance(v_pre + v_post, scale)) throw Error(Errc::zero_variance, "scores have zero variance");
  return (post.mean() - pre.mean()) / std::sqrt((v_pre + v_post) / Scalar(2));
}

/// Pooled d from published summary statistics alone.
template <typename Scalar>
Scalar cohens_d_pooled(Scalar mean_pre, Scalar sd_pre, Scalar mean_post, Scalar sd_post) {
  const Scalar pooled_var = (sd_pre * sd_pre + sd_post * sd_post) / Scalar(2);
  if (!(pooled_var > 0)) throw Error(Errc::zero_variance, "summary SDs are zero");
  return (mean_post - mean_pre) / std::sqrt(pooled_var);
}

template <typename Scalar>
Scalar improvement_pct(Scalar mean_pre, Scalar mean_post) {
  if (!(mean_pre > 0)) throw Error(Errc::invalid_argument, "improvement needs a positive baseline mean");
  return Scalar(100) * (mean_post - mean_pre) / mean_pre;
}

// --- correlation ------------------------------------------------------------------

template <typename Scalar>
struct Correlation {
  Scalar r = 0;
  Scalar p = 1;
  Eigen::Index n = 0;
};

template <typename DerivedA, typename DerivedB>
Correlation<typename DerivedA::Scalar> pearson_r(const Eigen::MatrixBase<DerivedA>& x,
                                                 const Eigen::MatrixBase<DerivedB>& y) {
  using Scalar = typename DerivedA::Scalar;
  if (x.size() != y.size()) throw Error(Errc::length_mismatch, "correlation inputs differ in length");
  if (x.size() < 3) throw Error(Errc::invalid_argument, "correlation needs n >= 3");
  const Vector<Scalar> dx = x.array() - x.mean();
  const Vector<Scalar> dy = y.array() - y.mean();
  const Scalar sxx = dx.squaredNorm();
  const Scalar syy = dy.squaredNorm();
  const auto n = x.size();
  if (degenerate_variance(sxx / Scalar(n - 1), x.cwiseAbs().maxCoeff()) ||
      degenerate_variance(syy / Scalar(n - 1), y.cwiseAbs().maxCoeff())) {
    throw Error(Errc::zero_variance, "correlation input has zero variance");
  }
  Correlation<Scalar> out;
  out.n = n;
  out.r = std::clamp(dx.dot(dy) / std::sqrt(sxx * syy), Scalar(-1), Scalar(1));
  const Scalar one_minus = Scalar(1) - out.r * out.r;
  if (one_minus <= Scalar(0)) {
    out.p = 0;
  } else {
    const Scalar t = out.r * std::sqrt(Scalar(n - 2) / one_minus);
    out.p = student_t_two_sided_p(t, Scalar(n - 2));
  }
  return out;
}

// --- reliability ------------------------------------------------------------------

/// alpha = k/(k-1) * (1 - sum(item variances) / variance(total score)); rows are respondents.
template <typename Derived>
typename Derived::Scalar cronbach_alpha(const Eigen::MatrixBase<Derived>& items) {
  using Scalar = typename Derived::Scalar;
  const auto k = items.cols();
  if (k < 2) throw Error(Errc::invalid_argument, "Cronbach's alpha needs at least 2 items");
  if (items.rows() < 2) throw Error(Errc::invalid_argument, "Cronbach's alpha needs at least 2 respondents");
  Scalar item_var_sum = 0;
  for (Eigen::Index j = 0; j < k; ++j) item_var_sum += sample_variance(items.col(j));
  const Vector<Scalar> totals = items.rowwise().sum();
  const Scalar total_var = sample_variance(totals);
  if (degenerate_variance(total_var, totals.cwiseAbs().maxCoeff())) {
    throw Error(Errc::zero_variance, "total score has zero variance");
  }
  return Scalar(k) / Scalar(k - 1) * (Scalar(1) - item_var_sum / total_var);
}

// --- regression -------------------------------------------------------------------

template <typename Scalar>
struct RegressionResult {
  Scalar intercept = 0;
  Vector<Scalar> coefficients;   // raw slopes, one per predictor
  Vector<Scalar> standardized;   // b_j * sd(x_j) / sd(y)
  Vector<Scalar> std_errors;     // slopes only
  Vector<Scalar> t_values;
  Vector<Scalar> p_values;
  Scalar r_squared = 0;
  Eigen::Index df_residual = 0;
};

/// OLS with intercept. Coefficients come from the normal equations solved by
/// pivoted LDLT; rank is checked on the design matrix with column-pivoting QR.
template <typename DerivedX, typename DerivedY>
RegressionResult<typename DerivedX::Scalar> ols_standardized(const Eigen::MatrixBase<DerivedX>& X,
                                                             const Eigen::MatrixBase<DerivedY>& y) {
  using Scalar = typename DerivedX::Scalar;
  const auto n = X.rows();
  const auto p = X.cols();
  if (y.size() != n) throw Error(Errc::length_mismatch, "response length differs from predictor rows");
  if (p < 1) throw Error(Errc::invalid_argument, "regression needs at least one predictor");
  if (n <= p) throw Error(Errc::rank_deficient, "regression needs more observations than predictors");

  Matrix<Scalar> design(n, p + 1);
  design.col(0).setOnes();
  design.rightCols(p) = X;

  Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(design);
  if (qr.rank() < p + 1) throw Error(Errc::rank_deficient, "predictor columns are linearly dependent");

  const Matrix<Scalar> gram = design.transpose() * design;
  const Vector<Scalar> moment = design.transpose() * y;
  const Eigen::LDLT<Matrix<Scalar>> ldlt(gram);
  const Vector<Scalar> beta = ldlt.solve(moment);

  const Vector<Scalar> residual = y - design * beta;
  const Scalar rss = residual.squaredNorm();
  const Scalar tss = (y.array() - y.mean()).square().sum();
  const Scalar sd_y = std::sqrt(tss / Scalar(n - 1));
  if (degenerate_variance(tss / Scalar(n - 1), y.cwiseAbs().maxCoeff())) {
    throw Error(Errc::zero_variance, "response has zero variance");
  }

  RegressionResult<Scalar> out;
  out.intercept = beta(0);
  out.coefficients = beta.tail(p);
  out.r_squared = Scalar(1) - rss / tss;
  out.df_residual = n - p - 1;
  out.standardized.resize(p);
  out.std_errors.resize(p);
  out.t_values.resize(p);
  out.p_values.resize(p);

  const Matrix<Scalar> gram_inv = ldlt.solve(Matrix<Scalar>::Identity(p + 1, p + 1));
  const Scalar nan = std::numeric_limits<Scalar>::quiet_NaN();
  const Scalar sigma2 = out.df_residual > 0 ? rss / Scalar(out.df_residual) : nan;
  for (Eigen::Index j = 0; j < p; ++j) {
    out.standardized(j) = out.coefficients(j) * sample_sd(X.col(j)) / sd_y;
    const Scalar se = std::sqrt(sigma2 * gram_inv(j + 1, j + 1));
    out.std_errors(j) = se;
    if (std::isnan(se)) {
      out.t_values(j) = nan;
      out.p_values(j) = nan;
    } else if (se == Scalar(0)) {
      out.t_values(j) = out.coefficients(j) == Scalar(0) ? nan
                                                         : std::copysign(std::numeric_limits<Scalar>::infinity(),
                                                                         out.coefficients(j));
      out.p_values(j) = out.coefficients(j) == Scalar(0) ? nan : Scalar(0);
    } else {
      out.t_values(j) = out.coefficients(j) / se;
      out.p_values(j) = student_t_two_sided_p(out.t_values(j), Scalar(out.df_residual));
    }
  }
  return out;
}

}  // namespace hijaiyah::stats
