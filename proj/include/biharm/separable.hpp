#pragma once

/**
 * @file separable.hpp
 * @brief Biharmonic products u(r) v_k(theta) on model spaces.
 *
 * With L_k u = u'' + (m-1)(sigma'/sigma) u' - k(m+k-2)/sigma^2 u, the product
 * u v_k is biharmonic iff L_k L_k u = 0. Given independent solutions u1, u2 of
 * L_k u = 0, variation of parameters gives particular solutions of
 * L_k u = u1 and L_k u = u2:
 *     up1 = u1 int(-u1 u2 / W) + u2 int(u1^2 / W),
 *     up2 = u1 int(-u2^2 / W)  + u2 int(u1 u2 / W),
 * with W = u1 u2' - u1' u2 = W0 (sigma(r0)/sigma(r))^{m-1} by Abel's identity.
 */

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "biharm/field.hpp"
#include "biharm/geometry.hpp"
#include "biharm/harmonics.hpp"
#include "biharm/jets.hpp"
#include "biharm/quadrature.hpp"
#include "biharm/radial.hpp"

namespace biharm {

enum class SolutionSource { kClosedForm, kNumeric };

inline const char* to_string(SolutionSource s) { return s == SolutionSource::kClosedForm ? "closed-form" : "numeric-IVP"; }

enum class SolveMode { kAuto, kClosedForm, kNumeric };

struct SeparableOptions {
  QuadratureConfig quadrature;          // tolerances and base point r0 of the particular-solution integrals
  double ode_tolerance = 1e-13;         // absolute and relative local error of the IVP
  std::optional<Interval> working;      // defaults to the radial module's interval
  SolveMode mode = SolveMode::kAuto;
};

/**
 * Solution of a(r) u'' + b(r) u' + c(r) u = 0 from (u, u')(r0), stored on a
 * knot grid; values elsewhere come from a short integration off the nearest
 * knot. Higher derivatives follow from the equation itself.
 */
class OdeSolution {
 public:
  using State = std::array<double, 2>;

  OdeSolution(RadialOperator op, double r0, State initial, Interval span, double tol, int knots = 64)
      : op_(std::move(op)), tol_(tol), valid_(span) {
    if (r0 < span.lo || r0 > span.hi) throw DomainError("IVP base point must lie in the integration span");
    for (int i = 0; i <= knots; ++i) knots_.push_back(span.lo + (span.hi - span.lo) * i / knots);
    knots_.push_back(r0);
    std::sort(knots_.begin(), knots_.end());
    knots_.erase(std::unique(knots_.begin(), knots_.end(), [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                 knots_.end());
    const auto base = static_cast<std::size_t>(std::lower_bound(knots_.begin(), knots_.end(), r0 - 1e-14) - knots_.begin());
    knots_[base] = r0;
    states_.assign(knots_.size(), State{0, 0});
    states_[base] = initial;
    std::size_t hi = base, lo = base;
    for (std::size_t i = base + 1; i < knots_.size(); ++i) {
      if (!advance(states_[i - 1], knots_[i - 1], knots_[i], states_[i])) break;
      hi = i;
    }
    for (std::size_t i = base; i-- > 0;) {
      if (!advance(states_[i + 1], knots_[i + 1], knots_[i], states_[i])) break;
      lo = i;
    }
    knots_ = std::vector<double>(knots_.begin() + static_cast<long>(lo), knots_.begin() + static_cast<long>(hi) + 1);
    states_ = std::vector<State>(states_.begin() + static_cast<long>(lo), states_.begin() + static_cast<long>(hi) + 1);
    valid_ = {knots_.front(), knots_.back()};
  }

  /// Interval on which the integration stayed finite (the full span unless it blew up).
  const Interval& valid_interval() const { return valid_; }

  State state(double r) const {
    if (r < valid_.lo - 1e-12 || r > valid_.hi + 1e-12)
      throw DomainError("numeric solution requested at r = " + std::to_string(r) + " outside its valid interval [" +
                        std::to_string(valid_.lo) + ", " + std::to_string(valid_.hi) + "]");
    const auto it = std::lower_bound(knots_.begin(), knots_.end(), r);
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    if (i == knots_.size() || (i > 0 && r - knots_[i - 1] < knots_[i] - r)) --i;
    State out;
    if (!advance(states_[i], knots_[i], r, out)) throw NumericError("numeric solution blew up");
    return out;
  }

  /// u, u', u'', u''', u'''' at r.
  std::array<double, 5> derivatives(double r) const {
    const State s = state(r);
    const OperatorCoefficients k = op_.coefficients(r);
    Jet1 U(s[0], s[1], 0, 0, 0);
    for (int n = 2; n <= 4; ++n) {
      const Jet1 rhs = -(k.b * U.derivative() + k.c * U) / k.a;
      U.d[static_cast<std::size_t>(n)] = rhs[n - 2];
    }
    return U.d;
  }

  template <class T>
  T operator()(const T& r) const {
    if constexpr (std::is_same_v<T, double>) {
      return state(r)[0];
    } else {
      return compose(r, derivatives(r.value()));
    }
  }

 private:
  bool advance(const State& from, double r_from, double r_to, State& to) const {
    to = from;
    if (r_from == r_to) return true;
    namespace odeint = boost::numeric::odeint;
    auto stepper = odeint::make_controlled(tol_, tol_, odeint::runge_kutta_fehlberg78<State>());
    auto rhs = [this](const State& x, State& dxdt, double r) {
      const OperatorCoefficients k = op_.coefficients(r);
      dxdt[0] = x[1];
      dxdt[1] = -(k.b.value() * x[1] + k.c.value() * x[0]) / k.a.value();
    };
    try {
      const double h = 0.05 * (r_to - r_from);
      odeint::integrate_adaptive(stepper, rhs, to, r_from, r_to, h);
    } catch (const std::exception&) {
      return false;
    }
    return std::isfinite(to[0]) && std::isfinite(to[1]);
  }

  RadialOperator op_;
  double tol_;
  Interval valid_;
  std::vector<double> knots_;
  std::vector<State> states_;
};

struct HomSolutionPair {
  RadialField u1, u2;
  double w0 = 0;  // u1 u2' - u1' u2 at r0
  double r0 = 0;
  SolutionSource source = SolutionSource::kNumeric;
  Interval valid;  // where both solutions are available
};

/// Whether (sigma, m, k) has the explicit fundamental pair used by solve_mh.
inline bool has_closed_form_mh(const ModelSpace& space) {
  const WarpTag t = space.warp().tag();
  return t == WarpTag::kEuclidean ||
         ((t == WarpTag::kSpherical || t == WarpTag::kHyperbolic) && space.dimension() == 2);
}

inline double wronskian_at(const RadialField& u1, const RadialField& u2, double r) {
  const Jet1 a = u1(Jet1::variable(r));
  const Jet1 b = u2(Jet1::variable(r));
  return a[0] * b[1] - a[1] * b[0];
}

/// Fundamental pair of L_k u = 0: closed forms on R^m and on S^2/H^2, numeric IVP otherwise.
inline HomSolutionPair solve_mh(const ModelSpace& space, int k, SeparableOptions opts = {}) {
  if (k < 1) throw DomainError("solve_mh needs k >= 1 (k = 0 is the radial case)");
  const WarpTag tag = space.warp().tag();
  const Interval working = opts.working.value_or(default_working_interval(tag));
  const double r0 = opts.quadrature.base_point.value_or(default_base_point(tag));
  const int m = space.dimension();

  bool closed = false;
  if (opts.mode == SolveMode::kClosedForm) {
    if (!has_closed_form_mh(space)) throw DomainError("no closed-form fundamental pair for this space");
    closed = true;
  } else if (opts.mode == SolveMode::kAuto) {
    closed = has_closed_form_mh(space);
  }

  HomSolutionPair p;
  p.r0 = r0;
  if (closed) {
    if (tag == WarpTag::kEuclidean) {
      p.u1 = RadialField([k](auto r) { return ipow(r, k); });
      p.u2 = RadialField([k, m](auto r) { return ipow(r, 2 - m - k); });
    } else if (tag == WarpTag::kSpherical) {
      p.u1 = RadialField([k](auto r) { return ipow(cot(0.5 * r), k); });
      p.u2 = RadialField([k](auto r) { return ipow(tan(0.5 * r), k); });
    } else {
      p.u1 = RadialField([k](auto r) { return ipow(coth(0.5 * r), k); });
      p.u2 = RadialField([k](auto r) { return ipow(tanh(0.5 * r), k); });
    }
    p.source = SolutionSource::kClosedForm;
    p.valid = working;
    p.w0 = wronskian_at(p.u1, p.u2, r0);
    return p;
  }

  const RadialOperator op = space.separable_operator(k);
  auto s1 = std::make_shared<const OdeSolution>(op, r0, OdeSolution::State{1.0, 0.0}, working, opts.ode_tolerance);
  auto s2 = std::make_shared<const OdeSolution>(op, r0, OdeSolution::State{0.0, 1.0}, working, opts.ode_tolerance);
  p.u1 = RadialField([s1](auto r) { return (*s1)(r); });
  p.u2 = RadialField([s2](auto r) { return (*s2)(r); });
  p.source = SolutionSource::kNumeric;
  p.valid = {std::max(s1->valid_interval().lo, s2->valid_interval().lo),
             std::min(s1->valid_interval().hi, s2->valid_interval().hi)};
  p.w0 = 1.0;
  return p;
}

/// W(r) = W0 (sigma(r0)/sigma(r))^{m-1}, as a jet-evaluable field.
inline RadialField wronskian_field(const HomSolutionPair& pair, const ModelSpace& space) {
  const RadialField sigma = space.warp().sigma();
  const double s0 = sigma(pair.r0);
  const double w0 = pair.w0;
  const int m = space.dimension();
  return RadialField([sigma, s0, w0, m](auto r) { return w0 * ipow(s0 / sigma(r), m - 1); });
}

inline double wronskian(const HomSolutionPair& pair, const ModelSpace& space, double r) {
  if (pair.w0 == 0) throw NumericError("fundamental pair is dependent (W0 = 0)");
  return wronskian_field(pair, space)(r);
}

struct ParticularSolutions {
  RadialField up1;  // L_k up1 = u1
  RadialField up2;  // L_k up2 = u2
};

inline ParticularSolutions particular_solutions(const HomSolutionPair& pair, const ModelSpace& space,
                                                const SeparableOptions& opts = {}) {
  if (pair.w0 == 0) throw NumericError("fundamental pair is dependent (W0 = 0)");
  const Interval w = pair.valid;
  const QuadratureConfig& cfg = opts.quadrature;
  const RadialField W = wronskian_field(pair, space);
  const RadialField u1 = pair.u1, u2 = pair.u2;
  auto a = make_primitive(RadialField([u1, u2, W](auto r) { return -(u1(r) * u2(r)) / W(r); }), pair.r0, w.lo, w.hi, cfg);
  auto b = make_primitive(RadialField([u1, W](auto r) {
                            const auto v = u1(r);
                            return v * v / W(r);
                          }),
                          pair.r0, w.lo, w.hi, cfg);
  auto c = make_primitive(RadialField([u2, W](auto r) {
                            const auto v = u2(r);
                            return -(v * v) / W(r);
                          }),
                          pair.r0, w.lo, w.hi, cfg);
  return {RadialField([u1, u2, a, b](auto r) { return u1(r) * a(r) + u2(r) * b(r); }),
          RadialField([u1, u2, a, c](auto r) { return u1(r) * c(r) - u2(r) * a(r); })};
}

/// u v_k with u = c1 u1 + c2 u2 + c3 up1 + c4 up2.
class SeparableBiharmonic {
 public:
  SeparableBiharmonic(ModelSpace space, int k, SphericalHarmonic angular, std::array<double, 4> c, HomSolutionPair pair,
                      ParticularSolutions ps)
      : space_(std::move(space)), k_(k), angular_(std::move(angular)), c_(c), pair_(std::move(pair)), ps_(std::move(ps)) {
    const auto u1 = pair_.u1, u2 = pair_.u2, p1 = ps_.up1, p2 = ps_.up2;
    radial_ = RadialField([u1, u2, p1, p2, c](auto r) {
      return c[0] * u1(r) + c[1] * u2(r) + c[2] * p1(r) + c[3] * p2(r);
    });
  }

  const ModelSpace& space() const { return space_; }
  int degree() const { return k_; }
  const SphericalHarmonic& angular() const { return angular_; }
  const std::array<double, 4>& coefficients() const { return c_; }
  const HomSolutionPair& pair() const { return pair_; }
  const ParticularSolutions& particular() const { return ps_; }
  const RadialField& radial() const { return radial_; }
  Interval working() const { return pair_.valid; }

  /// Value at radius r and direction theta (a unit vector in R^m).
  double operator()(double r, std::span<const double> theta) const { return radial_(r) * angular_(theta); }

  /// Radial factors of Delta and Delta^2 of the product.
  double laplacian_factor(double r) const { return laplacian_separable_radial_factor(space_, radial_, k_, r); }
  double bilaplacian_factor(double r) const { return bilaplacian_separable_radial_factor(space_, radial_, k_, r); }

 private:
  ModelSpace space_;
  int k_;
  SphericalHarmonic angular_;
  std::array<double, 4> c_;
  HomSolutionPair pair_;
  ParticularSolutions ps_;
  RadialField radial_;
};

inline SeparableBiharmonic build(const ModelSpace& space, int k, const SphericalHarmonic& angular,
                                 std::array<double, 4> c, const SeparableOptions& opts = {}) {
  if (angular.variables() != space.dimension())
    throw DomainError("angular harmonic must live in R^m, m = " + std::to_string(space.dimension()));
  if (angular.degree() != k)
    throw DomainError("angular harmonic has degree " + std::to_string(angular.degree()) + ", expected " +
                      std::to_string(k));
  HomSolutionPair pair = solve_mh(space, k, opts);
  ParticularSolutions ps = particular_solutions(pair, space, opts);
  return {space, k, angular, c, std::move(pair), std::move(ps)};
}

}  // namespace biharm
