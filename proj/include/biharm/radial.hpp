#pragma once

/**
 * @file radial.hpp
 * @brief Radial biharmonic functions on model spaces: the four-function
 *        integral basis, its closed forms on space forms, the conformally
 *        flat models, and least-squares span comparison.
 *
 * Every radial Laplacian treated here has the divergence form
 *     Delta u = (A u')' / B,
 * with A = B = sigma^{m-1} on a warped product. With
 *     y1 = int 1/A,  I1 = int B,  I2 = int y1 B,  I3 = int y1^2 B
 * (all based at r0), the functions
 *     1,  y1,  y1 I1 - I2,  y1 I2 - I3
 * satisfy Delta = 0, 0, 1, y1 respectively, so all four are biharmonic.
 */

#include <cmath>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "biharm/field.hpp"
#include "biharm/geometry.hpp"
#include "biharm/jets.hpp"
#include "biharm/quadrature.hpp"

namespace biharm {

/// Least-squares comparison was asked of a (numerically) rank-deficient basis.
class IllConditionedError : public NumericError {
 public:
  using NumericError::NumericError;
};

struct RadialBasis {
  std::string name;
  std::vector<std::string> labels;  // one per function
  std::vector<RadialField> functions;
  Interval working;  // closed sampling interval [lo, hi] strictly inside the domain
  double base = 0;   // r0 of the antiderivatives, if any
  QuadratureConfig config;

  std::size_t size() const { return functions.size(); }
  const RadialField& operator[](std::size_t i) const { return functions[i]; }
};

/// Default sampling interval: [0.3, 2.5], or [0.3, pi - 0.3] for the sphere.
inline Interval default_working_interval(WarpTag tag) {
  if (tag == WarpTag::kSpherical) return {0.3, std::numbers::pi - 0.3};
  return {0.3, 2.5};
}

/// Default base point: pi/2 on the sphere, 1 otherwise.
inline double default_base_point(WarpTag tag) { return tag == WarpTag::kSpherical ? std::numbers::pi / 2 : 1.0; }

/// `count` evenly spaced points of [lo, hi], endpoints included.
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

/// The four functions {1, y1, y1 I1 - I2, y1 I2 - I3} for Delta u = (A u')'/B.
inline RadialBasis divergence_form_basis(std::string name, const RadialField& A, const RadialField& B, double r0,
                                         Interval working, const QuadratureConfig& cfg) {
  const double lo = working.lo, hi = working.hi;
  auto y1 = make_primitive(RadialField([A](auto r) { return 1.0 / A(r); }), r0, lo, hi, cfg);
  auto I1 = make_primitive(B, r0, lo, hi, cfg);
  auto I2 = make_primitive(RadialField([y1, B](auto r) { return y1(r) * B(r); }), r0, lo, hi, cfg);
  auto I3 = make_primitive(RadialField([y1, B](auto r) {
                             const auto y = y1(r);
                             return y * y * B(r);
                           }),
                           r0, lo, hi, cfg);
  RadialBasis basis;
  basis.name = std::move(name);
  basis.labels = {"1", "y1", "y1*I1 - I2", "y1*I2 - I3"};
  basis.functions = {RadialField([](auto r) { return 0.0 * r + 1.0; }), y1,
                     RadialField([y1, I1, I2](auto r) { return y1(r) * I1(r) - I2(r); }),
                     RadialField([y1, I2, I3](auto r) { return y1(r) * I2(r) - I3(r); })};
  basis.working = working;
  basis.base = r0;
  basis.config = cfg;
  return basis;
}

/// Numeric four-function basis on a model space (A = B = sigma^{m-1}).
inline RadialBasis radial_biharmonic_basis(const ModelSpace& space, QuadratureConfig cfg = {},
                                    std::optional<Interval> working = std::nullopt) {
  const WarpTag tag = space.warp().tag();
  const Interval w = working.value_or(default_working_interval(tag));
  if (!cfg.base_point) cfg.base_point = default_base_point(tag);
  const double r0 = *cfg.base_point;
  if (!space.domain().contains(r0)) throw DomainError("base point r0 outside the warp domain");
  if (!space.domain().contains(w.lo) || !space.domain().contains(w.hi))
    throw DomainError("working interval must lie strictly inside the warp domain");
  if (r0 < w.lo || r0 > w.hi) throw DomainError("base point r0 must lie in the working interval");
  const int m = space.dimension();
  const RadialField sigma = space.warp().sigma();
  RadialField A([sigma, m](auto r) { return ipow(sigma(r), m - 1); });
  return divergence_form_basis(std::string("numeric(") + to_string(tag) + ", m=" + std::to_string(m) + ")", A, A, r0,
                               w, cfg);
}

enum class ClosedFormKind { kEuclidean, kSpherical, kHyperbolic };

/// The explicit radial bases on space forms: Euclidean for every m, sphere and
/// hyperbolic space for m = 2, 3.
inline RadialBasis closed_form_basis(ClosedFormKind kind, int m, QuadratureConfig cfg = {}) {
  if (m < 2) throw DomainError("closed_form_basis: m must be >= 2");
  RadialBasis b;
  b.config = cfg;
  auto one = RadialField([](auto r) { return 0.0 * r + 1.0; });
  if (kind == ClosedFormKind::kEuclidean) {
    b.name = "euclidean(m=" + std::to_string(m) + ")";
    b.working = default_working_interval(WarpTag::kEuclidean);
    if (m == 2) {
      b.labels = {"1", "ln r", "r^2", "r^2 ln r"};
      b.functions = {one, RadialField([](auto r) { return log(r); }), RadialField([](auto r) { return r * r; }),
                     RadialField([](auto r) { return r * r * log(r); })};
    } else if (m == 4) {
      b.labels = {"1", "r^-2", "r^2", "ln r"};
      b.functions = {one, RadialField([](auto r) { return ipow(r, -2); }), RadialField([](auto r) { return r * r; }),
                     RadialField([](auto r) { return log(r); })};
    } else {
      b.labels = {"1", "r^(2-m)", "r^2", "r^(4-m)"};
      b.functions = {one, RadialField([m](auto r) { return ipow(r, 2 - m); }), RadialField([](auto r) { return r * r; }),
                     RadialField([m](auto r) { return ipow(r, 4 - m); })};
    }
    return b;
  }
  const bool sphere = kind == ClosedFormKind::kSpherical;
  b.working = default_working_interval(sphere ? WarpTag::kSpherical : WarpTag::kHyperbolic);
  b.base = default_base_point(sphere ? WarpTag::kSpherical : WarpTag::kHyperbolic);
  if (m == 3) {
    b.name = sphere ? "sphere(m=3)" : "hyperbolic(m=3)";
    if (sphere) {
      b.labels = {"1", "cot r", "r", "r cot r"};
      b.functions = {one, RadialField([](auto r) { return cot(r); }), RadialField([](auto r) { return r; }),
                     RadialField([](auto r) { return r * cot(r); })};
    } else {
      b.labels = {"1", "coth r", "r", "r coth r"};
      b.functions = {one, RadialField([](auto r) { return coth(r); }), RadialField([](auto r) { return r; }),
                     RadialField([](auto r) { return r * coth(r); })};
    }
    return b;
  }
  if (m == 2) {
    b.name = sphere ? "sphere(m=2)" : "hyperbolic(m=2)";
    const double lo = b.working.lo, hi = b.working.hi;
    if (sphere) {
      RadialField lt([](auto r) { return log(tan(0.5 * r)); });
      RadialField ls([](auto r) { return log(sin(r)); });
      auto J = make_primitive(RadialField([lt](auto r) { return cot(r) * lt(r); }), b.base, lo, hi, cfg);
      b.labels = {"1", "ln tan(r/2)", "ln sin r", "ln sin r ln tan(r/2) - 2 int cot r ln tan(r/2)"};
      b.functions = {one, lt, ls, RadialField([lt, ls, J](auto r) { return ls(r) * lt(r) - 2.0 * J(r); })};
    } else {
      RadialField lt([](auto r) { return log(tanh(0.5 * r)); });
      RadialField ls([](auto r) { return log(sinh(r)); });
      auto J = make_primitive(RadialField([lt](auto r) { return coth(r) * lt(r); }), b.base, lo, hi, cfg);
      b.labels = {"1", "ln tanh(r/2)", "ln sinh r", "ln sinh r ln tanh(r/2) - 2 int coth r ln tanh(r/2)"};
      b.functions = {one, lt, ls, RadialField([lt, ls, J](auto r) { return ls(r) * lt(r) - 2.0 * J(r); })};
    }
    return b;
  }
  throw DomainError("closed forms on the sphere and hyperbolic space exist for m = 2, 3 only");
}

/// Working interval in the conformal coordinate t = tan(r/2) (sphere) or
/// tanh(r/2) (hyperbolic): the image of the warped default interval.
inline Interval conformal_working_interval(int sign) {
  if (sign > 0) return {std::tan(0.15), std::tan(0.5 * (std::numbers::pi - 0.3))};
  return {std::tanh(0.15), std::tanh(1.25)};
}

/**
 * Numeric basis of radial biharmonic functions in the conformally flat model
 * phi^2 (dt^2 + t^2 g), phi = 2/(1 + sign t^2), built from the integrands
 *     u2 = int (1 + sign t^2)^{m-2} / t^{m-1},   weight t^{m-1} / (1 + sign t^2)^m.
 */
inline RadialBasis conformal_basis(int sign, int m, QuadratureConfig cfg = {},
                                   std::optional<Interval> working = std::nullopt) {
  if (sign != 1 && sign != -1) throw DomainError("conformal model sign must be +1 or -1");
  if (m < 2) throw DomainError("conformal model dimension must be >= 2");
  const Interval w = working.value_or(conformal_working_interval(sign));
  if (sign < 0 && !(w.hi < 1.0)) throw DomainError("hyperbolic conformal model lives in t < 1");
  if (!cfg.base_point) cfg.base_point = sign > 0 ? 1.0 : std::tanh(0.5);
  const double s = sign;
  RadialField A([s, m](auto t) { return ipow(t, m - 1) / ipow(1.0 + s * t * t, m - 2); });
  RadialField B([s, m](auto t) { return ipow(t, m - 1) / ipow(1.0 + s * t * t, m); });
  RadialBasis b = divergence_form_basis(
      std::string(sign > 0 ? "conformal-sphere" : "conformal-hyperbolic") + "(m=" + std::to_string(m) + ")", A, B,
      *cfg.base_point, w, cfg);
  b.labels = {"1", "u2", "u2*J1 - J2", "u2*J2 - J3"};
  return b;
}

/// The m = 2 conformal closed forms:
/// {1, ln t, ln(1 + sign t^2), ln t ln(1 + sign t^2) - 2 int ln(1 + sign t^2)/t}.
inline RadialBasis conformal_closed_form_basis(int sign, QuadratureConfig cfg = {}) {
  if (sign != 1 && sign != -1) throw DomainError("conformal model sign must be +1 or -1");
  RadialBasis b;
  b.name = sign > 0 ? "conformal-sphere(m=2) closed form" : "conformal-hyperbolic(m=2) closed form";
  b.working = conformal_working_interval(sign);
  b.base = sign > 0 ? 1.0 : std::tanh(0.5);
  b.config = cfg;
  const double s = sign;
  RadialField lq([s](auto t) { return log(1.0 + s * t * t); });
  auto J = make_primitive(RadialField([lq](auto t) { return lq(t) / t; }), b.base, b.working.lo, b.working.hi, cfg);
  const std::string q = sign > 0 ? "ln(1+t^2)" : "ln(1-t^2)";
  b.labels = {"1", "ln t", q, "ln t " + q + " - 2 int " + q + "/t"};
  b.functions = {RadialField([](auto t) { return 0.0 * t + 1.0; }), RadialField([](auto t) { return log(t); }), lq,
                 RadialField([lq, J](auto t) { return log(t) * lq(t) - 2.0 * J(t); })};
  return b;
}

// ---------------------------------------------------------------------------
// Least-squares span comparison
// ---------------------------------------------------------------------------

struct SpanFit {
  std::vector<double> coefficients;
  double residual = 0;  // max |a - sum beta_i b_i| / max |a| over the samples
};

namespace detail {

inline Eigen::MatrixXd design_matrix(const std::vector<RadialField>& B, const std::vector<double>& samples) {
  Eigen::MatrixXd M(static_cast<Eigen::Index>(samples.size()), static_cast<Eigen::Index>(B.size()));
  for (std::size_t i = 0; i < samples.size(); ++i)
    for (std::size_t j = 0; j < B.size(); ++j)
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = B[j](samples[i]);
  return M;
}

/// Solves min |M beta - a| with column equilibration; rejects numerically
/// rank-deficient M.
class LeastSquares {
 public:
  explicit LeastSquares(Eigen::MatrixXd M, double rcond = 1e-13) : M_(std::move(M)) {
    if (M_.rows() < 2 * M_.cols()) throw DomainError("span fit needs at least twice as many samples as functions");
    scale_ = M_.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < scale_.size(); ++j) {
      if (!(scale_(j) > 0) || !std::isfinite(scale_(j)))
        throw IllConditionedError("basis function " + std::to_string(j) + " vanishes or is not finite on the samples");
      M_.col(j) /= scale_(j);
    }
    svd_.compute(M_, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd_.singularValues();
    if (sv.size() > 0 && sv(sv.size() - 1) < rcond * sv(0))
      throw IllConditionedError("span fit matrix is rank deficient (singular value ratio " +
                                std::to_string(sv(sv.size() - 1) / sv(0)) + ")");
  }

  SpanFit fit(const Eigen::VectorXd& a) const {
    Eigen::VectorXd beta = svd_.solve(a);
    const Eigen::VectorXd r = M_ * beta - a;
    SpanFit out;
    for (Eigen::Index j = 0; j < beta.size(); ++j) out.coefficients.push_back(beta(j) / scale_(j));
    const double amax = a.cwiseAbs().maxCoeff();
    out.residual = amax > 0 ? r.cwiseAbs().maxCoeff() / amax : r.cwiseAbs().maxCoeff();
    return out;
  }

 private:
  Eigen::MatrixXd M_;
  Eigen::VectorXd scale_;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd_;
};

}  // namespace detail

/// Least-squares fit of a by the span of B on the samples.
inline SpanFit fit_coefficients(const RadialField& a, const std::vector<RadialField>& B,
                                const std::vector<double>& samples) {
  const detail::LeastSquares ls(detail::design_matrix(B, samples));
  Eigen::VectorXd av(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) av(static_cast<Eigen::Index>(i)) = a(samples[i]);
  return ls.fit(av);
}

/// Max over a in A of the relative residual of fitting a by span(B).
inline double span_match(const std::vector<RadialField>& A, const std::vector<RadialField>& B,
                         const std::vector<double>& samples) {
  const detail::LeastSquares ls(detail::design_matrix(B, samples));
  double worst = 0;
  for (const auto& a : A) {
    Eigen::VectorXd av(static_cast<Eigen::Index>(samples.size()));
    for (std::size_t i = 0; i < samples.size(); ++i) av(static_cast<Eigen::Index>(i)) = a(samples[i]);
    worst = std::max(worst, ls.fit(av).residual);
  }
  return worst;
}

inline double span_match(const RadialBasis& A, const RadialBasis& B, const std::vector<double>& samples) {
  return span_match(A.functions, B.functions, samples);
}

/// Composition u(t(r)): carries a basis in the t coordinate over to r.
inline RadialField reparametrize(const RadialField& u, const RadialField& t_of_r) {
  return RadialField([u, t_of_r](auto r) { return u(t_of_r(r)); });
}

}  // namespace biharm
