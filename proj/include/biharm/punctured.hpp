#pragma once

/**
 * @file punctured.hpp
 * @brief Biharmonic functions on R^m minus the origin: the positive-Laplacian
 *        family, positive harmonic functions, the Almansi shape of family
 *        members and the bounded-biharmonic fixtures.
 *
 * Family members are radial, u = sum of coefficients times a per-dimension
 * basis in r = |x|:
 *     m = 2:     1, ln r, r^2
 *     m = 4:     1, r^-2, r^2, ln r
 *     otherwise: 1, r^(2-m), r^2, r^(4-m)
 * with coefficients (c1, c2, a, b). The ln r of m = 4 is kept as its own
 * basis element; r^(4-m) would collapse into the constant there.
 */

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "biharm/field.hpp"
#include "biharm/geometry.hpp"
#include "biharm/jets.hpp"
#include "biharm/radial.hpp"

namespace biharm {

struct PositiveLaplacianFamily {
  int m = 2;
  double c1 = 0, c2 = 0;  // harmonic part
  double a = 0, b = 0;    // b has no term when m = 2
};

/// The radial basis of the family in dimension m, with labels.
inline std::pair<std::vector<std::string>, std::vector<RadialField>> family_basis(int m) {
  if (m < 2) throw DomainError("punctured space dimension must be >= 2");
  const RadialField one([](auto r) { return 0.0 * r + 1.0; });
  const RadialField sq([](auto r) { return r * r; });
  if (m == 2) return {{"1", "ln r", "r^2"}, {one, RadialField([](auto r) { return log(r); }), sq}};
  if (m == 4)
    return {{"1", "r^-2", "r^2", "ln r"},
            {one, RadialField([](auto r) { return ipow(r, -2); }), sq, RadialField([](auto r) { return log(r); })}};
  return {{"1", "r^(2-m)", "r^2", "r^(4-m)"},
          {one, RadialField([m](auto r) { return ipow(r, 2 - m); }), sq,
           RadialField([m](auto r) { return ipow(r, 4 - m); })}};
}

inline std::vector<double> family_coefficients(const PositiveLaplacianFamily& f) {
  if (f.m == 2) return {f.c1, f.c2, f.a};
  return {f.c1, f.c2, f.a, f.b};
}

/// u as a function of r = |x|.
inline RadialField family_radial(const PositiveLaplacianFamily& f) {
  auto basis = family_basis(f.m).second;
  const std::vector<double> c = family_coefficients(f);
  return RadialField([basis = std::move(basis), c](auto r) {
    decltype(r) acc(0.0);
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i] != 0) acc = acc + c[i] * basis[i](r);
    return acc;
  });
}

inline ScalarField family_field(const PositiveLaplacianFamily& f) {
  const RadialField u = family_radial(f);
  return ScalarField(f.m, [u](auto x) { return u(norm(x)); });
}

inline double family_eval(const PositiveLaplacianFamily& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != f.m) throw DomainError("point dimension does not match the family");
  const double r = norm(x);
  if (!(r > 0)) throw DomainError("the family is not defined at the origin");
  return family_radial(f)(r);
}

/// `count` log-spaced radii in [lo, hi].
inline std::vector<double> logspace(double lo, double hi, std::size_t count) {
  std::vector<double> out = linspace(std::log(lo), std::log(hi), count);
  for (double& v : out) v = std::exp(v);
  return out;
}

struct FamilyValidation {
  bool signs_ok = false;
  bool positivity_ok = false;
  double min_laplacian = 0;  // over the sampled radii
  std::vector<std::string> violations;
  bool ok() const { return signs_ok && positivity_ok; }
};

/// Sign table on (a, b) together with Delta u > 0 at 30 log-spaced radii in [0.1, 10].
inline FamilyValidation validate(const PositiveLaplacianFamily& f) {
  FamilyValidation v;
  if (f.m < 2) {
    v.violations.push_back("m must be >= 2");
    return v;
  }
  v.signs_ok = true;
  auto fail = [&v](std::string s) {
    v.signs_ok = false;
    v.violations.push_back(std::move(s));
  };
  if (f.m == 2) {
    if (!(f.a > 0)) fail("m = 2 requires a > 0");
    if (f.b != 0) fail("m = 2 has no b term");
  } else {
    if (f.a < 0) fail("a must be >= 0");
    if (f.m <= 4 && f.b < 0) fail("m in {3, 4} requires b >= 0");
    if (f.m > 4 && f.b > 0) fail("m > 4 requires b <= 0");
    if (f.a == 0 && f.b == 0) fail("a^2 + b^2 must be nonzero");
  }
  const ModelSpace space = ModelSpace::euclidean(f.m);
  const RadialField u = family_radial(f);
  v.positivity_ok = true;
  bool first = true;
  for (double r : logspace(0.1, 10.0, 30)) {
    const double lap = laplacian_radial(space, u, r);
    v.min_laplacian = first ? lap : std::min(v.min_laplacian, lap);
    first = false;
    if (!(lap > 0)) v.positivity_ok = false;
  }
  if (!v.positivity_ok)
    v.violations.push_back("Delta u is not positive on the samples (min " + std::to_string(v.min_laplacian) + ")");
  return v;
}

/// Positive harmonic function on the punctured space: the constant a when
/// m = 2, a + b |x|^(2-m) otherwise (a, b >= 0, not both zero).
inline ScalarField positive_harmonic_form(int m, double a, double b = 0) {
  if (m < 2) throw DomainError("punctured space dimension must be >= 2");
  if (m == 2) {
    if (!(a > 0)) throw DomainError("a positive harmonic function on the punctured plane is a positive constant");
    if (b != 0) throw DomainError("m = 2 admits no |x| term");
    return ScalarField(2, [a](auto x) { return 0.0 * x[0] + a; });
  }
  if (a < 0 || b < 0 || (a == 0 && b == 0)) throw DomainError("positive harmonic form needs a, b >= 0, not both zero");
  return ScalarField(m, [m, a, b](auto x) { return a + b * ipow(norm(x), 2 - m); });
}

/// Coefficients (A, B) of Delta u = A + B |x|^(2-m) for a family member.
inline std::pair<double, double> laplacian_image(const PositiveLaplacianFamily& f) {
  if (f.m == 2) return {4.0 * f.a, 0.0};
  if (f.m == 4) return {8.0 * f.a, 2.0 * f.b};
  return {2.0 * f.m * f.a, 2.0 * (4 - f.m) * f.b};
}

/// Which Almansi shape a member takes and its harmonic pieces:
/// u = h1 + |x|^2 h2 + log_part, with h1, h2 harmonic.
struct AlmansiShape {
  std::string row;  // "h1 + |x|^2 h2 + (a x1 + b x2) ln|x|", "h1 + |x|^2 h2 + a ln|x|" or "h1 + |x|^2 h2"
  ScalarField h1, h2;
  ScalarField log_part;  // zero field when the row has none
};

inline AlmansiShape almansi_shape(const PositiveLaplacianFamily& f) {
  const int m = f.m;
  const double c1 = f.c1, c2 = f.c2, a = f.a, b = f.b;
  AlmansiShape s;
  const ScalarField zero(m, [](auto x) { return 0.0 * x[0]; });
  s.log_part = zero;
  if (m == 2) {
    s.row = "h1 + |x|^2 h2 + (a x1 + b x2) ln|x|";
    s.h1 = ScalarField(2, [c1, c2](auto x) { return c1 + c2 * log(norm(x)); });
    s.h2 = ScalarField(2, [a](auto x) { return 0.0 * x[0] + a; });
  } else if (m == 4) {
    s.row = "h1 + |x|^2 h2 + a ln|x|";
    s.h1 = ScalarField(4, [c1, c2](auto x) { return c1 + c2 * ipow(norm(x), -2); });
    s.h2 = ScalarField(4, [a](auto x) { return 0.0 * x[0] + a; });
    s.log_part = ScalarField(4, [b](auto x) { return b * log(norm(x)); });
  } else {
    s.row = "h1 + |x|^2 h2";
    s.h1 = ScalarField(m, [m, c1, c2](auto x) { return c1 + c2 * ipow(norm(x), 2 - m); });
    s.h2 = ScalarField(m, [m, a, b](auto x) { return a + b * ipow(norm(x), 2 - m); });
  }
  return s;
}

struct FamilyFit {
  PositiveLaplacianFamily family;
  double residual = 0;  // max |u - fit| / max |u| over the samples
  bool constraints_ok = false;
};

/// Least-squares identification of samples (x_i, u_i) against the family basis.
/// Coefficients below 1e-9 of the largest one are snapped to zero before the
/// sign table is consulted.
inline FamilyFit fit_family(const std::vector<Point>& points, const std::vector<double>& values, int m) {
  if (points.size() != values.size()) throw DomainError("fit_family: points and values differ in length");
  if (points.size() < 8) throw DomainError("fit_family needs at least 8 samples");
  std::vector<double> radii;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != m) throw DomainError("fit_family: sample dimension does not match m");
    const double r = norm(p);
    if (!(r > 0)) throw DomainError("fit_family: sample at the origin");
    radii.push_back(r);
  }
  std::vector<double> distinct = radii;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end(),
                             [](double x, double y) { return std::abs(x - y) <= 1e-12 * std::max(x, y); }),
                 distinct.end());
  if (distinct.size() < 4) throw DomainError("fit_family needs samples at >= 4 distinct radii");

  const auto basis = family_basis(m).second;
  const detail::LeastSquares ls(detail::design_matrix(basis, radii));
  const Eigen::VectorXd u = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
  const SpanFit fit = ls.fit(u);

  std::vector<double> c = fit.coefficients;
  double cmax = 0;
  for (double v : c) cmax = std::max(cmax, std::abs(v));
  for (double& v : c)
    if (std::abs(v) < 1e-9 * cmax) v = 0;
  FamilyFit out;
  out.family = {m, c[0], c[1], c[2], m == 2 ? 0.0 : c[3]};
  out.residual = fit.residual;
  out.constraints_ok = validate(out.family).ok();
  return out;
}

inline void to_json(nlohmann::json& j, const FamilyFit& f) {
  j = nlohmann::json{{"m", f.family.m},  {"c1", f.family.c1},   {"c2", f.family.c2},
                     {"a", f.family.a},  {"b", f.family.b},     {"residual", f.residual},
                     {"constraints_ok", f.constraints_ok}};
}

struct BoundedFixture {
  std::string name;
  int m = 2;
  ScalarField field;
  bool biharmonic = true;
  bool bounded = true;
};

/**
 * Bounded biharmonic functions on R^m minus the origin, with negative controls.
 *
 * m = 3 carries three bounded fields of separated form (r = |x|, theta the polar
 * angle about the x3 axis). They are bounded but not biharmonic; the degree-0
 * fields x_i/|x| are included as the bounded proper biharmonic ones.
 */
inline std::vector<BoundedFixture> bounded_fixtures(int m) {
  if (m < 2) throw DomainError("punctured space dimension must be >= 2");
  std::vector<BoundedFixture> out;
  out.push_back({"1", m, ScalarField(m, [](auto x) { return 0.0 * x[0] + 1.0; }), true, true});
  if (m == 2) {
    out.push_back({"cos 2theta", 2, ScalarField(2, [](auto x) {
                     return (x[0] * x[0] - x[1] * x[1]) / squared_norm(x);
                   }), true, true});
    out.push_back({"sin 2theta", 2, ScalarField(2, [](auto x) { return 2.0 * x[0] * x[1] / squared_norm(x); }), true,
                   true});
    out.push_back({"r^4 cos 2theta", 2, ScalarField(2, [](auto x) {
                     return squared_norm(x) * (x[0] * x[0] - x[1] * x[1]);
                   }), true, false});
  } else if (m == 3) {
    out.push_back({"cos r cos theta", 3, ScalarField(3, [](auto x) {
                     const auto r = norm(x);
                     return cos(r) * x[2] / r;
                   }), false, true});
    out.push_back({"sin r sin theta", 3, ScalarField(3, [](auto x) {
                     const auto r = norm(x);
                     return sin(r) * sqrt(x[0] * x[0] + x[1] * x[1]) / r;
                   }), false, true});
    out.push_back({"cos r", 3, ScalarField(3, [](auto x) { return cos(norm(x)); }), false, true});
    for (int i = 0; i < 3; ++i)
      out.push_back({"x" + std::to_string(i + 1) + "/|x|", 3,
                     ScalarField(3, [i](auto x) { return x[static_cast<std::size_t>(i)] / norm(x); }), true, true});
  } else {
    out.push_back({"x1/|x|", m, ScalarField(m, [](auto x) { return x[0] / norm(x); }), false, true});
  }
  return out;
}

}  // namespace biharm
