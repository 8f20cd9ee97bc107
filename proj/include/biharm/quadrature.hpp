#pragma once

/**
 * @file quadrature.hpp
 * @brief Globally adaptive Gauss-Kronrod (7/15) integration and cached
 *        antiderivatives of jet-evaluable integrands.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "biharm/field.hpp"
#include "biharm/jets.hpp"

namespace biharm {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivision_depth = 40;
  std::optional<double> base_point;  // r0; the space supplies a default when absent

  void validate() const {
    if (!(abs_tol > 0) || !(rel_tol > 0)) throw DomainError("quadrature tolerances must be positive");
    if (max_subdivision_depth < 1) throw DomainError("quadrature depth must be >= 1");
  }
};

/// Adaptive integration gave up; carries the best estimate and its error bound.
class QuadratureError : public NumericError {
 public:
  QuadratureError(const std::string& what, double estimate, double error_bound)
      : NumericError(what + " (estimate " + std::to_string(estimate) + ", error bound " +
                     std::to_string(error_bound) + ")"),
        estimate_(estimate),
        error_bound_(error_bound) {}
  double estimate() const { return estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

struct QuadratureResult {
  double value = 0;
  double error = 0;
  int evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.0,
    2.07784955007898467600689403773245e-01,
    4.05845151377397166906606412076961e-01,
    5.86087235467691130294144845693013e-01,
    7.41531185599394439863864773280788e-01,
    8.64864423359769072789712788640926e-01,
    9.49107912342758524526189684047851e-01,
    9.91455371120812639206854697526329e-01};
inline constexpr std::array<double, 8> kKronrodWeights = {
    2.09482141084727828012999174891714e-01,
    2.04432940075298892414161999234649e-01,
    1.90350578064785409913256402421014e-01,
    1.69004726639267902826583426598550e-01,
    1.40653259715525918745189590510238e-01,
    1.04790010322250183839876322541518e-01,
    6.30920926299785532907006631892042e-02,
    2.29353220105292249637320080589696e-02};
// Gauss weights for the nodes kKronrodNodes[0, 2, 4, 6].
inline constexpr std::array<double, 4> kGaussWeights = {
    4.17959183673469387755102040816327e-01,
    3.81830050505118944950369775488975e-01,
    2.79705391489276667901467771423780e-01,
    1.29484966168869693270611432679082e-01};

struct Segment {
  double a, b, value, error;
  int depth;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class G>
Segment gauss_kronrod(const G& g, double a, double b, int depth) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double f0 = g(c);
  if (!std::isfinite(f0)) throw NumericError("integrand is not finite at r = " + std::to_string(c));
  double kronrod = kKronrodWeights[0] * f0;
  double gauss = kGaussWeights[0] * f0;
  for (std::size_t i = 1; i < 8; ++i) {
    const double dx = h * kKronrodNodes[i];
    const double fl = g(c - dx);
    const double fr = g(c + dx);
    if (!std::isfinite(fl) || !std::isfinite(fr))
      throw NumericError("integrand is not finite near r = " + std::to_string(c));
    kronrod += kKronrodWeights[i] * (fl + fr);
    if (i % 2 == 0) gauss += kGaussWeights[i / 2] * (fl + fr);
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h), depth};
}

}  // namespace detail

/// int_a^b g, refined until the summed error estimate is below
/// max(abs_tol, rel_tol |value|). Integrands are never evaluated at a or b.
template <class G>
QuadratureResult integrate(const G& g, double a, double b, const QuadratureConfig& cfg = {}) {
  cfg.validate();
  if (a == b) return {};
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integration limits must be finite");
  const double sign = b > a ? 1.0 : -1.0;
  if (b < a) std::swap(a, b);

  std::priority_queue<detail::Segment> heap;
  heap.push(detail::gauss_kronrod(g, a, b, 0));
  double value = heap.top().value;
  double error = heap.top().error;
  int evaluations = 15;
  constexpr int kMaxSegments = 4000;
  while (error > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value))) {
    const detail::Segment worst = heap.top();
    if (worst.depth >= cfg.max_subdivision_depth || static_cast<int>(heap.size()) >= kMaxSegments)
      throw QuadratureError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                                std::to_string(b) + "]",
                            sign * value, error);
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const detail::Segment left = detail::gauss_kronrod(g, worst.a, mid, worst.depth + 1);
    const detail::Segment right = detail::gauss_kronrod(g, mid, worst.b, worst.depth + 1);
    evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  value = 0;
  error = 0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {sign * value, error, evaluations};
}

/// One-shot antiderivative: int_{r0}^{r} g.
inline QuadratureResult primitive(const RadialField& g, double r0, double r, const QuadratureConfig& cfg = {}) {
  return integrate([&g](double t) { return g(t); }, r0, r, cfg);
}

/**
 * P(r) = int_{r0}^{r} g with cumulative values cached on a knot grid over
 * [lo, hi] (r0 is always a knot). Each evaluation integrates only from the
 * nearest knot. Construction is the only mutating step; afterwards every
 * member is const and safe to call concurrently.
 *
 * Jets use P' = g: the derivatives of P at r are g, g', g'', g''' at r.
 */
class Primitive {
 public:
  Primitive(RadialField g, double r0, double lo, double hi, QuadratureConfig cfg = {}, int knots = 48)
      : g_(std::move(g)), r0_(r0), cfg_(cfg) {
    cfg_.validate();
    if (!(lo < hi) || r0 < lo || r0 > hi) throw DomainError("primitive: base point must lie in [lo, hi]");
    knots = std::max(knots, 2);
    for (int i = 0; i <= knots; ++i) knots_.push_back(lo + (hi - lo) * i / knots);
    knots_.push_back(r0);
    std::sort(knots_.begin(), knots_.end());
    knots_.erase(std::unique(knots_.begin(), knots_.end(), [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                 knots_.end());
    values_.assign(knots_.size(), 0.0);
    errors_.assign(knots_.size(), 0.0);
    const auto base = static_cast<std::size_t>(nearest(r0_));
    knots_[base] = r0_;
    const auto f = [this](double t) { return g_(t); };
    for (std::size_t i = base + 1; i < knots_.size(); ++i) {
      const QuadratureResult q = integrate(f, knots_[i - 1], knots_[i], cfg_);
      values_[i] = values_[i - 1] + q.value;
      errors_[i] = errors_[i - 1] + q.error;
    }
    for (std::size_t i = base; i-- > 0;) {
      const QuadratureResult q = integrate(f, knots_[i + 1], knots_[i], cfg_);
      values_[i] = values_[i + 1] + q.value;
      errors_[i] = errors_[i + 1] + q.error;
    }
  }

  double base() const { return r0_; }
  const RadialField& integrand() const { return g_; }

  QuadratureResult evaluate(double r) const {
    const auto i = static_cast<std::size_t>(nearest(r));
    const QuadratureResult q = integrate([this](double t) { return g_(t); }, knots_[i], r, cfg_);
    return {values_[i] + q.value, errors_[i] + q.error, q.evaluations};
  }

  double operator()(double r) const { return evaluate(r).value; }

  template <class J>
  J operator()(const J& r) const {
    const double r0 = r.value();
    const Jet1 gj = g_(Jet1::variable(r0));
    return compose(r, std::array<double, 5>{(*this)(r0), gj[0], gj[1], gj[2], gj[3]});
  }

  /// The primitive as a jet-evaluable radial field sharing this cache.
  static RadialField field(std::shared_ptr<const Primitive> p) {
    return RadialField([p](auto r) { return (*p)(r); });
  }

 private:
  long nearest(double r) const {
    const auto it = std::lower_bound(knots_.begin(), knots_.end(), r);
    if (it == knots_.begin()) return 0;
    if (it == knots_.end()) return static_cast<long>(knots_.size()) - 1;
    const auto j = it - knots_.begin();
    return (r - knots_[static_cast<std::size_t>(j - 1)] < *it - r) ? j - 1 : j;
  }

  RadialField g_;
  double r0_;
  QuadratureConfig cfg_;
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> errors_;
};

inline RadialField make_primitive(RadialField g, double r0, double lo, double hi, const QuadratureConfig& cfg = {}) {
  return Primitive::field(std::make_shared<const Primitive>(std::move(g), r0, lo, hi, cfg));
}

}  // namespace biharm
