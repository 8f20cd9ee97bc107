#pragma once

/**
 * @file sphere.hpp
 * @brief Intrinsic operators on S^m computed from ambient Euclidean jets.
 *
 * A function f on S^m is represented by an ambient field on R^{m+1}. Because
 * x -> x/|x| is a harmonic morphism with dilation 1/|x|, the degree-0
 * extension F(x) = f(x/|x|) satisfies, on |x| = 1,
 *     Delta_S f   = Delta F,
 *     Delta_S^2 f = Delta^2 F + 2(m-3) Delta_S f.
 * For an arbitrary extension G of f the Laplacian is also
 *     Delta_S f = Delta G - G_rr - m G_r,
 * which gives an independent route to the correction term.
 */

#include <cmath>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "biharm/field.hpp"
#include "biharm/harmonics.hpp"
#include "biharm/jets.hpp"
#include "biharm/report.hpp"

namespace biharm {

inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kRenormalizeTolerance = 1e-8;

/// x itself when |x| = 1 within 1e-12, x/|x| when within 1e-8, otherwise an error.
inline Point unit_point(std::span<const double> x) {
  const double r = norm(x);
  if (std::abs(r - 1.0) <= kUnitTolerance) return Point(x.begin(), x.end());
  if (std::abs(r - 1.0) <= kRenormalizeTolerance) {
    Point y(x.begin(), x.end());
    for (auto& v : y) v /= r;
    return y;
  }
  throw DomainError("point is not on the unit sphere (|x| = " + std::to_string(r) + ")");
}

/// A forbidden spherical cap: points with angle < radius from `pole` are skipped.
struct Cap {
  Point pole;
  double radius;
};

/// `count` points on S^m from normalized standard Gaussians, outside the caps.
inline std::vector<Point> sample_sphere(int m, std::size_t count, std::uint64_t seed, const std::vector<Cap>& caps = {}) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Point> out;
  out.reserve(count);
  const auto n = static_cast<std::size_t>(m + 1);
  while (out.size() < count) {
    Point x(n);
    for (auto& v : x) v = gauss(rng);
    const double r = norm(x);
    if (r < 1e-8) continue;
    for (auto& v : x) v /= r;
    bool ok = true;
    for (const auto& cap : caps) {
      double dot = 0;
      for (std::size_t i = 0; i < n; ++i) dot += x[i] * cap.pole[i];
      if (std::acos(std::clamp(dot, -1.0, 1.0)) < cap.radius) ok = false;
    }
    if (ok) out.push_back(std::move(x));
  }
  return out;
}

/// f on S^m through a degree-0 homogeneous extension to R^{m+1} \ {0}.
class SphereFunction {
 public:
  /// `F` is declared degree-0 homogeneous; this is spot-checked.
  static SphereFunction homogeneous(int m, ScalarField F) {
    SphereFunction f(m, F, F);
    f.check_homogeneity();
    return f;
  }

  /// f given as any ambient field; the working extension is f(x/|x|).
  static SphereFunction project(int m, ScalarField f) {
    require_dim(m, f);
    ScalarField ext(m + 1, [f](auto x) {
      using T = typename decltype(x)::value_type;
      const T r = norm(x);
      std::vector<T> y(x.begin(), x.end());
      for (auto& v : y) v = v / r;
      return f(std::span<const T>(y));
    });
    SphereFunction out(m, std::move(ext), std::move(f));
    out.check_homogeneity();
    return out;
  }

  /// Restriction of a homogeneous polynomial of degree k: extension |x|^{-k} p(x).
  static SphereFunction restriction(const HomogeneousPolynomial& p) {
    const int m = p.variables() - 1;
    const int k = p.degree();
    ScalarField raw = p.as_field();
    ScalarField ext(p.variables(), [p, k](auto x) {
      using T = typename decltype(x)::value_type;
      const T value = p.evaluate(x);
      if (k == 0) return value;
      return value * pow(squared_norm(x), -0.5 * k);
    });
    return SphereFunction(m, std::move(ext), std::move(raw));
  }

  int m() const { return m_; }
  const ScalarField& extension() const { return ext_; }
  /// The field the caller supplied (not necessarily homogeneous).
  const ScalarField& raw() const { return raw_; }

  double operator()(std::span<const double> x) const {
    const Point u = unit_point(x);
    return ext_(std::span<const double>(u));
  }

 private:
  SphereFunction(int m, ScalarField ext, ScalarField raw) : m_(m), ext_(std::move(ext)), raw_(std::move(raw)) {
    if (m_ < 1) throw DomainError("sphere dimension must be >= 1");
    require_dim(m_, ext_);
  }

  static void require_dim(int m, const ScalarField& f) {
    if (f.dim() != m + 1) throw DomainError("ambient field must live on R^" + std::to_string(m + 1));
  }

  void check_homogeneity() const {
    std::mt19937_64 rng(0x5eedf00d);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int checked = 0;
    for (int attempt = 0; attempt < 40 && checked < 8; ++attempt) {
      Point x(static_cast<std::size_t>(m_ + 1));
      for (auto& v : x) v = gauss(rng);
      Point y = x;
      for (auto& v : y) v *= 2.0;
      double a, b;
      try {
        a = ext_(std::span<const double>(x));
        b = ext_(std::span<const double>(y));
      } catch (const NumericError&) {
        continue;
      }
      if (!std::isfinite(a) || !std::isfinite(b)) continue;
      if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
        throw DomainError("extension is not degree-0 homogeneous: F(x) = " + std::to_string(a) +
                          ", F(2x) = " + std::to_string(b));
      ++checked;
    }
    if (checked == 0) throw DomainError("could not evaluate the extension to check homogeneity");
  }

  int m_;
  ScalarField ext_;
  ScalarField raw_;
};

/// Delta_S f = Delta F at x on S^m, F the degree-0 extension.
inline double sphere_laplacian(const SphereFunction& f, std::span<const double> x) {
  const Point u = unit_point(x);
  return euclidean_laplacian(f.extension(), u);
}

/// Delta_S f = Delta G - G_rr - m G_r for the caller's raw extension G.
inline double sphere_laplacian_tangential(const SphereFunction& f, std::span<const double> x) {
  const Point u = unit_point(x);
  const double lap = euclidean_laplacian(f.raw(), u);
  const auto radial = directional_derivatives(f.raw(), u, u, 2);
  return lap - radial[2] - f.m() * radial[1];
}

enum class SphereRoute {
  kIntrinsicCorrection,  // Delta^2 F + 2(m-3) Delta_S f, with Delta_S f from the tangential formula
  kAmbientCorrection,    // Delta^2 F + 2(m-3) Delta F
};

inline double sphere_bilaplacian(const SphereFunction& f, std::span<const double> x,
                                 SphereRoute route = SphereRoute::kIntrinsicCorrection) {
  const Point u = unit_point(x);
  const int m = f.m();
  if (route == SphereRoute::kAmbientCorrection) {
    const LaplacianPair p = euclidean_laplacian_pair(f.extension(), u);
    return p.bilaplacian + 2.0 * (m - 3) * p.laplacian;
  }
  const double bi = euclidean_bilaplacian(f.extension(), u);
  if (m == 3) return bi;
  return bi + 2.0 * (m - 3) * sphere_laplacian_tangential(f, u);
}

/// Value, Delta_S f and Delta_S^2 f from one set of jet sweeps.
inline OperatorSample sphere_operators(const SphereFunction& f, std::span<const double> x) {
  const Point u = unit_point(x);
  const LaplacianPair p = euclidean_laplacian_pair(f.extension(), u);
  return {f.extension()(std::span<const double>(u)), p.laplacian,
          p.bilaplacian + 2.0 * (f.m() - 3) * p.laplacian};
}

/**
 * Delta_S^2 of the restriction of a degree-k homogeneous F in m+1 variables,
 * evaluated on exact polynomials:
 *     k^2 (k-1+m)^2 F + Delta^2 F - 2[k^2 + (k-1)(m-3)] Delta F   on |x| = 1.
 */
inline double bilaplacian_poly_restriction(const HomogeneousPolynomial& F, std::span<const double> x) {
  const Point u = unit_point(x);
  const int m = F.variables() - 1;
  const int k = F.degree();
  if (m < 1) throw DomainError("polynomial needs at least two variables");
  if (static_cast<int>(u.size()) != F.variables()) throw DomainError("point dimension does not match polynomial");
  const std::span<const double> us(u);

  // Euler spot check: <x, grad F> = k F.
  double euler = 0, scale = std::abs(F.evaluate(us));
  for (int i = 0; i < F.variables(); ++i) {
    const double g = F.partial(i).evaluate(us);
    euler += u[static_cast<std::size_t>(i)] * g;
    scale += std::abs(g);
  }
  if (std::abs(euler - k * F.evaluate(us)) > 1e-10 * (1.0 + scale))
    throw DomainError("polynomial is not homogeneous of its declared degree");

  const HomogeneousPolynomial lap = poly_laplacian(F);
  const HomogeneousPolynomial bilap = poly_laplacian(lap);
  const double kk = static_cast<double>(k) * (k - 1 + m);
  return kk * kk * F.evaluate(us) + bilap.evaluate(us) -
         2.0 * (static_cast<double>(k) * k + (k - 1.0) * (m - 3)) * lap.evaluate(us);
}

struct SpectrumEntry {
  int k = 0;
  double laplace = 0;   // lambda_k = k(m+k-1)
  double bi = 0;        // mu_k = lambda_k^2
  double buckling = 0;  // nu_k = lambda_k
  std::map<int, double> k_laplacian;  // order j -> lambda_k^j
  bool degree2_buckling = false;      // k = 2: nu = 2(m+1)
};

inline std::vector<SpectrumEntry> spectra(int m, int k_max, const std::vector<int>& orders = {}) {
  if (m < 1) throw DomainError("sphere dimension must be >= 1");
  if (k_max < 0) throw DomainError("k_max must be >= 0");
  for (int j : orders)
    if (j < 1) throw DomainError("k-Laplacian order must be >= 1");
  std::vector<SpectrumEntry> out;
  for (int k = 0; k <= k_max; ++k) {
    SpectrumEntry e;
    e.k = k;
    e.laplace = sphere_eigenvalue(m + 1, k);
    e.bi = e.laplace * e.laplace;
    e.buckling = e.laplace;
    for (int j : orders) e.k_laplacian[j] = std::pow(e.laplace, j);
    e.degree2_buckling = (k == 2);
    out.push_back(std::move(e));
  }
  return out;
}

/// nu = 2(m+1): buckling eigenvalue of every degree-2 restriction.
inline double degree2_buckling_eigenvalue(int m) { return 2.0 * (m + 1); }

inline void to_json(nlohmann::json& j, const SpectrumEntry& e) {
  nlohmann::json kl = nlohmann::json::object();
  for (const auto& [order, v] : e.k_laplacian) kl[std::to_string(order)] = v;
  j = nlohmann::json{{"k", e.k}, {"lambda", e.laplace}, {"bi", e.bi}, {"buckling", e.buckling}, {"k_laplacian", kl}};
  if (e.degree2_buckling) j["degree2_buckling"] = true;
}

/// f = (h + c|x|^2)|_{S^m} with ambient extension |x|^{-k} h(x) + c.
inline SphereFunction buckling_function(const SphericalHarmonic& h, double c) {
  const int k = h.degree();
  const HomogeneousPolynomial p = h.poly();
  ScalarField ext(p.variables(), [p, k, c](auto x) {
    using T = typename decltype(x)::value_type;
    T v = p.evaluate(x);
    if (k != 0) v = v * pow(squared_norm(x), -0.5 * k);
    return v + c;
  });
  return SphereFunction::homogeneous(p.variables() - 1, std::move(ext));
}

/// max |Delta_S^2 f + lambda_k Delta_S f| over the samples for f = (h + c|x|^2)|_{S^m}.
inline ResidualReport buckling_check(const SphericalHarmonic& h, double c, const std::vector<Point>& samples,
                                     double tau = 1e-6) {
  const SphereFunction f = buckling_function(h, c);
  const double nu = sphere_eigenvalue(h.variables(), h.degree());
  std::vector<OperatorSample> s;
  s.reserve(samples.size());
  double worst = 0;
  for (const auto& x : samples) {
    const OperatorSample o = sphere_operators(f, x);
    worst = std::max(worst, std::abs(o.bilaplacian + nu * o.laplacian));
    s.push_back(o);
  }
  ResidualReport r = summarize(s, 0, tau);
  r.max_residual = worst;
  return r;
}

}  // namespace biharm
