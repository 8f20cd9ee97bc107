#pragma once

/**
 * @file geometry.hpp
 * @brief Warped-product model spaces dr^2 + sigma(r)^2 g_{S^{m-1}} and their
 *        Laplacian / bi-Laplacian on radial and separable fields.
 *
 * Every intrinsic operator here acts on a radial factor u(r). For a product
 * u(r) v_k(theta) with v_k a degree-k spherical harmonic on S^{m-1}, the
 * angular part is eliminated analytically through
 * Delta_{S^{m-1}} v_k = -k(m+k-2) v_k.
 *
 * Second-order radial operators are written uniformly as
 *     (L u)(r) = a(r) u'' + b(r) u' + c(r) u,
 * and L(L u) is obtained by evaluating L u in Jet1 arithmetic. With u known to
 * order 4 and a, b, c to order 2, the jet of L u is exact through order 2,
 * which is all the outer application needs.
 */

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "biharm/field.hpp"
#include "biharm/harmonics.hpp"
#include "biharm/jets.hpp"

namespace biharm {

/// A radial profile u(r), evaluable in double, Jet1 and Jet2.
using RadialField = UnivariateFn;

enum class WarpTag { kEuclidean, kSpherical, kHyperbolic, kCustom };

inline const char* to_string(WarpTag t) {
  switch (t) {
    case WarpTag::kEuclidean: return "r";
    case WarpTag::kSpherical: return "sin";
    case WarpTag::kHyperbolic: return "sinh";
    case WarpTag::kCustom: return "custom";
  }
  return "?";
}

/// Open interval (lo, hi).
struct Interval {
  double lo = 0;
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double r) const { return r > lo && r < hi; }
};

class WarpFunction {
 public:
  /// `check_hi` bounds the positivity grid when the domain is unbounded.
  WarpFunction(WarpTag tag, RadialField sigma, Interval domain, double check_hi = 20.0)
      : tag_(tag), sigma_(std::move(sigma)), domain_(domain) {
    if (!(domain_.lo < domain_.hi)) throw DomainError("warp domain is empty");
    const double hi = std::isfinite(domain_.hi) ? domain_.hi : std::max(check_hi, domain_.lo + 1.0);
    constexpr int kGrid = 400;
    for (int i = 1; i < kGrid; ++i) {
      const double r = domain_.lo + (hi - domain_.lo) * i / kGrid;
      double s;
      try {
        s = sigma_(r);
      } catch (const NumericError&) {
        throw DomainError("warp function is singular at r = " + std::to_string(r));
      }
      if (!(s > 0)) throw DomainError("warp function is not positive at r = " + std::to_string(r));
    }
  }

  static WarpFunction euclidean() {
    return {WarpTag::kEuclidean, RadialField([](auto r) { return r; }), {0.0, std::numeric_limits<double>::infinity()}};
  }
  static WarpFunction spherical() {
    return {WarpTag::kSpherical, RadialField([](auto r) { return sin(r); }), {0.0, std::numbers::pi}};
  }
  static WarpFunction hyperbolic() {
    return {WarpTag::kHyperbolic, RadialField([](auto r) { return sinh(r); }),
            {0.0, std::numeric_limits<double>::infinity()}};
  }
  static WarpFunction from_tag(WarpTag t) {
    switch (t) {
      case WarpTag::kEuclidean: return euclidean();
      case WarpTag::kSpherical: return spherical();
      case WarpTag::kHyperbolic: return hyperbolic();
      case WarpTag::kCustom: break;
    }
    throw DomainError("custom warps need an explicit sigma");
  }

  WarpTag tag() const { return tag_; }
  const Interval& domain() const { return domain_; }
  const RadialField& sigma() const { return sigma_; }
  template <class T> T operator()(const T& r) const { return sigma_(r); }

 private:
  WarpTag tag_;
  RadialField sigma_;
  Interval domain_;
};

/// Coefficients (a, b, c) of L u = a u'' + b u' + c u as jets in r.
struct OperatorCoefficients {
  Jet1 a, b, c;
};

/// A second-order linear operator acting on radial profiles.
class RadialOperator {
 public:
  using CoefficientFn = std::function<OperatorCoefficients(double)>;

  RadialOperator(CoefficientFn coeffs, Interval domain, std::string name)
      : coeffs_(std::move(coeffs)), domain_(domain), name_(std::move(name)) {}

  const Interval& domain() const { return domain_; }
  const std::string& name() const { return name_; }

  OperatorCoefficients coefficients(double r) const {
    require_inside(r);
    return coeffs_(r);
  }

  /// Jet of L u at r, exact through order 2.
  Jet1 apply_jet(const RadialField& u, double r) const {
    const OperatorCoefficients k = coefficients(r);
    const Jet1 U = u(Jet1::variable(r));
    if (!all_finite(U)) throw NumericError(name_ + ": radial field is singular at r = " + std::to_string(r));
    const Jet1 dU = U.derivative();
    const Jet1 ddU = dU.derivative();
    Jet1 L = k.a * ddU + k.b * dU;
    if (!k.c.is_constant() || k.c.value() != 0.0) L += k.c * U;
    if (!all_finite(L)) throw NumericError(name_ + ": non-finite operator value at r = " + std::to_string(r));
    return L;
  }

  double apply(const RadialField& u, double r) const { return apply_jet(u, r).value(); }

  double apply_twice(const RadialField& u, double r) const {
    const Jet1 L = apply_jet(u, r);
    const OperatorCoefficients k = coeffs_(r);
    const double v = k.a.value() * L[2] + k.b.value() * L[1] + k.c.value() * L[0];
    if (!std::isfinite(v)) throw NumericError(name_ + ": non-finite bi-operator value");
    return v;
  }

 private:
  void require_inside(double r) const {
    if (!domain_.contains(r))
      throw DomainError(name_ + ": r = " + std::to_string(r) + " outside the open domain (" +
                        std::to_string(domain_.lo) + ", " + std::to_string(domain_.hi) + ")");
  }

  CoefficientFn coeffs_;
  Interval domain_;
  std::string name_;
};

/// M^m_sigma(o): ((0, inf) x S^{m-1}, dr^2 + sigma^2(r) g_{S^{m-1}}).
class ModelSpace {
 public:
  ModelSpace(int m, WarpFunction warp) : m_(m), warp_(std::move(warp)) {
    if (m_ < 2) throw DomainError("model space dimension must be >= 2");
    if (warp_.tag() == WarpTag::kSpherical &&
        (warp_.domain().lo < 0 || warp_.domain().hi > std::numbers::pi + 1e-15))
      throw DomainError("spherical warp must live inside (0, pi)");
  }

  static ModelSpace euclidean(int m) { return {m, WarpFunction::euclidean()}; }
  static ModelSpace sphere(int m) { return {m, WarpFunction::spherical()}; }
  static ModelSpace hyperbolic(int m) { return {m, WarpFunction::hyperbolic()}; }

  int dimension() const { return m_; }
  const WarpFunction& warp() const { return warp_; }
  const Interval& domain() const { return warp_.domain(); }

  /// L_k u = u'' + (m-1)(sigma'/sigma) u' - k(m+k-2)/sigma^2 u.
  /// k = 0 gives the radial Laplacian.
  RadialOperator separable_operator(int k) const {
    if (k < 0) throw DomainError("spherical harmonic degree must be >= 0");
    const int m = m_;
    const double eig = sphere_eigenvalue(m, k);  // eigenvalue on S^{m-1}, ambient dimension m
    auto coeffs = [m, eig, warp = warp_](double r) {
      const Jet1 s = warp(Jet1::variable(r));
      if (!(s.value() > 0)) throw DomainError("warp function not positive at r = " + std::to_string(r));
      OperatorCoefficients k{Jet1(1.0), (m - 1) * (s.derivative() / s), Jet1(0.0)};
      if (eig != 0.0) k.c = -eig * recip(s * s);
      return k;
    };
    return {coeffs, domain(), std::string("model(") + to_string(warp_.tag()) + ", m=" + std::to_string(m) + ")"};
  }

 private:
  int m_;
  WarpFunction warp_;
};

/// Delta_sigma u = u'' + (m-1)(sigma'/sigma) u'.
inline double laplacian_radial(const ModelSpace& space, const RadialField& u, double r) {
  return space.separable_operator(0).apply(u, r);
}

/// Delta_sigma^2 u, the radial Laplacian applied twice.
inline double bilaplacian_radial(const ModelSpace& space, const RadialField& u, double r) {
  return space.separable_operator(0).apply_twice(u, r);
}

/// Radial factor of Delta(u v_k): u'' + (m-1)(sigma'/sigma) u' - k(m+k-2)/sigma^2 u.
inline double laplacian_separable_radial_factor(const ModelSpace& space, const RadialField& u, int k, double r) {
  return space.separable_operator(k).apply(u, r);
}

/// Radial factor of Delta^2(u v_k).
inline double bilaplacian_separable_radial_factor(const ModelSpace& space, const RadialField& u, int k, double r) {
  return space.separable_operator(k).apply_twice(u, r);
}

/// u(r) v_k(theta) with v_k harmonic of degree k in m variables.
struct SeparableField {
  RadialField radial;
  int degree;
  SphericalHarmonic angular;

  SeparableField(RadialField u, SphericalHarmonic v) : radial(std::move(u)), degree(v.degree()), angular(std::move(v)) {}

  /// Value at radius r and unit direction theta in R^m.
  double operator()(double r, std::span<const double> theta) const { return radial(r) * angular(theta); }
};

/**
 * Radial Laplacian of the conformally flat models of S^m (sign = +1) and
 * H^m (sign = -1): metric phi^2 (dt^2 + t^2 g_{S^{m-1}}), phi = 2 / (1 + sign t^2).
 *     Delta u = phi^{-2} [u'' + ((m-1)/t + (m-2) phi'/phi) u'].
 */
inline RadialOperator conformal_radial_operator(int sign, int m) {
  if (sign != 1 && sign != -1) throw DomainError("conformal model sign must be +1 or -1");
  if (m < 2) throw DomainError("conformal model dimension must be >= 2");
  const Interval dom = sign > 0 ? Interval{0.0, std::numeric_limits<double>::infinity()} : Interval{0.0, 1.0};
  auto coeffs = [sign, m](double t) {
    const Jet1 T = Jet1::variable(t);
    const Jet1 phi = 2.0 / (1.0 + sign * (T * T));
    const Jet1 inv_phi2 = recip(phi * phi);
    OperatorCoefficients k{inv_phi2, ((m - 1) * recip(T) + (m - 2) * (phi.derivative() / phi)) * inv_phi2, Jet1(0.0)};
    return k;
  };
  return {coeffs, dom, std::string(sign > 0 ? "conformal-sphere" : "conformal-hyperbolic") + "(m=" + std::to_string(m) + ")"};
}

}  // namespace biharm
