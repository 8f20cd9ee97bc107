#pragma once

/**
 * @file verify.hpp
 * @brief Residual computation, classification and the regression catalog of
 *        closed-form biharmonic examples.
 *
 * A probe maps a sample point to (f, Delta f, Delta^2 f). Probes exist for
 * fields on R^m, on S^m, for radial profiles under any radial operator, and
 * for separable products u(r) v_k(theta). Samplers produce the points; the
 * reduction over samples runs in sample order, so reports are reproducible
 * bit for bit.
 */

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <locale>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "biharm/field.hpp"
#include "biharm/geometry.hpp"
#include "biharm/harmonics.hpp"
#include "biharm/jets.hpp"
#include "biharm/punctured.hpp"
#include "biharm/radial.hpp"
#include "biharm/report.hpp"
#include "biharm/separable.hpp"
#include "biharm/sphere.hpp"

namespace biharm {

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

enum class SamplerKind { kRadialGrid, kSphereGaussian, kProductGrid };

inline const char* to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::kRadialGrid: return "radial-grid";
    case SamplerKind::kSphereGaussian: return "sphere-gaussian";
    case SamplerKind::kProductGrid: return "product-grid";
  }
  return "?";
}

/**
 * radial-grid      `count` evenly spaced radii of [lo, hi], as 1-point vectors
 * sphere-gaussian  `count` points of S^{dim-1} outside the caps
 * product-grid     points r * theta of R^dim, r evenly spaced in [lo, hi],
 *                  theta Gaussian-random unit directions
 */
struct Sampler {
  SamplerKind kind = SamplerKind::kRadialGrid;
  std::size_t count = 50;
  std::uint64_t seed = 20240901;
  int dim = 1;
  Interval interval{0.3, 2.5};
  std::vector<Cap> caps;

  static Sampler radial(Interval w, std::size_t count = 50) { return {SamplerKind::kRadialGrid, count, 0, 1, w, {}}; }
  static Sampler sphere(int m, std::size_t count = 50, std::uint64_t seed = 20240901, std::vector<Cap> caps = {}) {
    return {SamplerKind::kSphereGaussian, count, seed, m + 1, {}, std::move(caps)};
  }
  static Sampler annulus(int m, Interval radii, std::size_t count = 50, std::uint64_t seed = 20240901) {
    return {SamplerKind::kProductGrid, count, seed, m, radii, {}};
  }

  std::vector<Point> points() const {
    if (count == 0) throw DomainError("sampler needs at least one point");
    std::vector<Point> out;
    if (kind == SamplerKind::kRadialGrid) {
      for (double r : linspace(interval.lo, interval.hi, count)) out.push_back({r});
      return out;
    }
    if (kind == SamplerKind::kSphereGaussian) return sample_sphere(dim - 1, count, seed, caps);
    if (!(interval.lo > 0) || !(interval.lo <= interval.hi)) throw DomainError("annulus radii must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (double r : linspace(interval.lo, interval.hi, count)) {
      Point x(static_cast<std::size_t>(dim));
      double n2 = 0;
      do {
        n2 = 0;
        for (double& v : x) {
          v = g(rng);
          n2 += v * v;
        }
      } while (n2 < 1e-12);
      const double s = r / std::sqrt(n2);
      for (double& v : x) v *= s;
      out.push_back(std::move(x));
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Probes
// ---------------------------------------------------------------------------

using Probe = std::function<OperatorSample(const Point&)>;

inline Probe euclidean_probe(ScalarField f) {
  return [f = std::move(f)](const Point& x) {
    const LaplacianPair p = euclidean_laplacian_pair(f, x);
    return OperatorSample{f(std::span<const double>(x)), p.laplacian, p.bilaplacian};
  };
}

inline Probe sphere_probe(SphereFunction f) {
  return [f = std::move(f)](const Point& x) { return sphere_operators(f, x); };
}

/// Radial profile u under a radial operator L; samples are 1-point vectors [r].
inline Probe radial_probe(RadialOperator op, RadialField u) {
  return [op = std::move(op), u = std::move(u)](const Point& x) {
    const double r = x.at(0);
    const Jet1 L = op.apply_jet(u, r);
    const OperatorCoefficients k = op.coefficients(r);
    const double bi = k.a.value() * L[2] + k.b.value() * L[1] + k.c.value() * L[0];
    return OperatorSample{u(r), L[0], bi};
  };
}

inline Probe model_radial_probe(const ModelSpace& space, RadialField u) {
  return radial_probe(space.separable_operator(0), std::move(u));
}

/// u(r) v(theta) on a model space; samples are points x of R^m with r = |x|, theta = x/|x|.
inline Probe separable_probe(const ModelSpace& space, RadialField u, SphericalHarmonic v) {
  if (v.variables() != space.dimension()) throw DomainError("angular harmonic must live in R^m");
  const RadialOperator op = space.separable_operator(v.degree());
  const Probe radial = radial_probe(op, std::move(u));
  return [radial, v = std::move(v)](const Point& x) {
    const double r = norm(x);
    Point theta = x;
    for (double& t : theta) t /= r;
    const double a = v(std::span<const double>(theta));
    const OperatorSample s = radial({r});
    return OperatorSample{s.value * a, s.laplacian * a, s.bilaplacian * a};
  };
}

inline Probe scaled_probe(Probe p, double alpha) {
  return [p = std::move(p), alpha](const Point& x) {
    const OperatorSample s = p(x);
    return OperatorSample{alpha * s.value, alpha * s.laplacian, alpha * s.bilaplacian};
  };
}

// ---------------------------------------------------------------------------
// Evaluation and classification
// ---------------------------------------------------------------------------

struct SampleSet {
  std::vector<Point> points;  // the points that evaluated cleanly
  std::vector<OperatorSample> values;
  std::size_t excluded = 0;
};

/// Evaluates the probe on every point; singular evaluations (NumericError or
/// non-finite output) are skipped and counted. More than 10% skipped is an error.
inline SampleSet evaluate(const Probe& probe, const std::vector<Point>& points) {
  SampleSet s;
  for (const auto& x : points) {
    try {
      const OperatorSample o = probe(x);
      if (!std::isfinite(o.value) || !std::isfinite(o.laplacian) || !std::isfinite(o.bilaplacian)) {
        ++s.excluded;
        continue;
      }
      s.points.push_back(x);
      s.values.push_back(o);
    } catch (const NumericError&) {
      ++s.excluded;
    }
  }
  if (10 * s.excluded > points.size())
    throw SamplingError(std::to_string(s.excluded) + " of " + std::to_string(points.size()) +
                        " samples hit singularities (limit 10%)");
  return s;
}

inline ResidualReport classify(const SampleSet& s, double tau = 1e-6) {
  if (!(tau > 0)) throw DomainError("tolerance must be positive");
  return summarize(s.values, s.excluded, tau);
}

inline ResidualReport classify(const Probe& probe, const Sampler& sampler, double tau = 1e-6) {
  return classify(evaluate(probe, sampler.points()), tau);
}

/// max |Delta^2 f - mu f| over the samples.
inline double eigen_residual(const Probe& probe, double mu, const Sampler& sampler) {
  const SampleSet s = evaluate(probe, sampler.points());
  double worst = 0;
  for (const auto& o : s.values) worst = std::max(worst, std::abs(o.bilaplacian - mu * o.value));
  return worst;
}

/// max |Delta^2 f + nu Delta f| over the samples.
inline double buckling_residual(const Probe& probe, double nu, const Sampler& sampler) {
  const SampleSet s = evaluate(probe, sampler.points());
  double worst = 0;
  for (const auto& o : s.values) worst = std::max(worst, std::abs(o.bilaplacian + nu * o.laplacian));
  return worst;
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

struct Subject {
  Probe probe;
  Sampler sampler;
};

struct CatalogEntry {
  std::string name;
  std::string space;
  std::string description;
  Verdict expected = Verdict::kProperBiharmonic;
  std::optional<double> constant;  // Delta f of a quasi-harmonic entry
  std::function<Subject()> build;
};

struct CatalogResult {
  std::string name;
  std::string space;
  Verdict expected = Verdict::kProperBiharmonic;
  std::optional<double> expected_constant;
  ResidualReport report;
  bool pass = false;
  std::string diagnostics;
  double seconds = 0;
};

struct CatalogRun {
  std::vector<CatalogResult> results;
  bool all_passed() const {
    for (const auto& r : results)
      if (!r.pass) return false;
    return !results.empty();
  }
};

namespace detail {

inline std::vector<Cap> polar_caps(int m, double radius) {
  Point n(static_cast<std::size_t>(m + 1), 0.0), s(static_cast<std::size_t>(m + 1), 0.0);
  n.back() = 1.0;
  s.back() = -1.0;
  return {{n, radius}, {s, radius}};
}

inline Subject on_sphere(int m, ScalarField f, std::size_t count, std::uint64_t seed) {
  return {sphere_probe(SphereFunction::project(m, std::move(f))), Sampler::sphere(m, count, seed, polar_caps(m, 0.3))};
}

inline Subject on_euclidean(int m, ScalarField f, std::size_t count, std::uint64_t seed) {
  return {euclidean_probe(std::move(f)), Sampler::annulus(m, {0.3, 2.5}, count, seed)};
}

inline Subject on_model(const ModelSpace& space, RadialField u, std::size_t count) {
  return {model_radial_probe(space, std::move(u)), Sampler::radial(default_working_interval(space.warp().tag()), count)};
}

inline Subject on_conformal(int sign, int m, RadialField u, std::size_t count) {
  return {radial_probe(conformal_radial_operator(sign, m), std::move(u)),
          Sampler::radial(conformal_working_interval(sign), count)};
}

inline Subject on_product(const ModelSpace& space, RadialField u, SphericalHarmonic v, std::size_t count,
                          std::uint64_t seed, std::optional<Interval> radii = std::nullopt) {
  const Interval w = radii.value_or(default_working_interval(space.warp().tag()));
  return {separable_probe(space, std::move(u), std::move(v)), Sampler::annulus(space.dimension(), w, count, seed)};
}

/// The degree-k harmonic x1 (k = 1) or x1^2 - x2^2 (k = 2) in two variables.
inline SphericalHarmonic planar_harmonic(int k) {
  HomogeneousPolynomial p = HomogeneousPolynomial::monomial({k, 0});
  if (k == 2) p = p - HomogeneousPolynomial::monomial({0, 2});
  return SphericalHarmonic(p);
}

}  // namespace detail

/// Every closed-form example, with the verdict the classification rule assigns.
inline std::vector<CatalogEntry> catalog(std::size_t count = 50, std::uint64_t seed = 20240901,
                                         const QuadratureConfig& cfg = {}) {
  using detail::on_conformal;
  using detail::on_euclidean;
  using detail::on_model;
  using detail::on_product;
  using detail::on_sphere;
  constexpr Verdict H = Verdict::kHarmonic, Q = Verdict::kQuasiHarmonic, P = Verdict::kProperBiharmonic,
                    N = Verdict::kNotBiharmonic;
  std::vector<CatalogEntry> c;
  auto add = [&c](std::string name, std::string space, std::string desc, Verdict v, std::optional<double> k,
                  std::function<Subject()> build) {
    c.push_back({std::move(name), std::move(space), std::move(desc), v, k, std::move(build)});
  };
  auto euclid = [count, seed](int m, auto f) {
    return [count, seed, m, f]() { return on_euclidean(m, ScalarField(m, f), count, seed); };
  };
  auto model = [count](ModelSpace s, auto u) {
    return [count, s, u]() { return on_model(s, RadialField(u), count); };
  };

  // Sphere fields given by ambient formulas.
  add("S2-ln-1-x3", "S^2", "ln(1 - x3), poles excluded", Q, -1.0, [count, seed]() {
    return on_sphere(2, ScalarField(3, [](auto x) { return log(1.0 - x[2]); }), count, seed);
  });
  add("S3-linear-over-rho", "S^3", "(x1 - 2 x2 + x3/2) / sqrt(1 - x4^2), poles excluded", P, std::nullopt,
      [count, seed]() {
        return on_sphere(3, ScalarField(4, [](auto x) {
                           return (x[0] - 2.0 * x[1] + 0.5 * x[2]) / sqrt(1.0 - x[3] * x[3]);
                         }), count, seed);
      });

  // Radial functions on R^m.
  add("R2-ln-r", "R^2", "ln r", H, std::nullopt, euclid(2, [](auto x) { return log(norm(x)); }));
  add("R2-r2", "R^2", "r^2", Q, 4.0, euclid(2, [](auto x) { return squared_norm(x); }));
  add("R2-r2lnr", "R^2", "r^2 ln r, Delta = 4(1 + ln r) changes sign", P, std::nullopt,
      euclid(2, [](auto x) { return squared_norm(x) * log(norm(x)); }));
  add("R4-r-2", "R^4", "r^-2", H, std::nullopt, euclid(4, [](auto x) { return recip(squared_norm(x)); }));
  add("R4-r2", "R^4", "r^2", Q, 8.0, euclid(4, [](auto x) { return squared_norm(x); }));
  add("R4-ln-r", "R^4", "ln r", P, std::nullopt, euclid(4, [](auto x) { return log(norm(x)); }));
  add("R3-r-1", "R^3", "r^-1", H, std::nullopt, euclid(3, [](auto x) { return recip(norm(x)); }));
  add("R3-r", "R^3", "r", P, std::nullopt, euclid(3, [](auto x) { return norm(x); }));
  add("R5-r-1", "R^5", "r^-1 = r^(4-m)", P, std::nullopt, euclid(5, [](auto x) { return recip(norm(x)); }));
  add("R3-r3", "R^3", "r^3, Delta^2 = 24/r", N, std::nullopt, euclid(3, [](auto x) { return squared_norm(x) * norm(x); }));

  // Radial functions on S^3, H^3, S^2, H^2.
  const ModelSpace s3 = ModelSpace::sphere(3), h3 = ModelSpace::hyperbolic(3);
  const ModelSpace s2 = ModelSpace::sphere(2), h2 = ModelSpace::hyperbolic(2);
  add("S3-cot-r", "S^3 radial", "cot r", H, std::nullopt, model(s3, [](auto r) { return cot(r); }));
  add("S3-r", "S^3 radial", "r (the distance function)", P, std::nullopt, model(s3, [](auto r) { return r; }));
  add("S3-rcotr", "S^3 radial", "r cot r", Q, -2.0, model(s3, [](auto r) { return r * cot(r); }));
  add("H3-coth-r", "H^3 radial", "coth r", H, std::nullopt, model(h3, [](auto r) { return coth(r); }));
  add("H3-r", "H^3 radial", "r", P, std::nullopt, model(h3, [](auto r) { return r; }));
  add("H3-rcothr", "H^3 radial", "r coth r", Q, 2.0, model(h3, [](auto r) { return r * coth(r); }));
  add("S2-ln-tan-half-r", "S^2 radial", "ln tan(r/2)", H, std::nullopt,
      model(s2, [](auto r) { return log(tan(0.5 * r)); }));
  add("S2-ln-sin-r", "S^2 radial", "ln sin r", Q, -1.0, model(s2, [](auto r) { return log(sin(r)); }));
  add("H2-ln-tanh-half-r", "H^2 radial", "ln tanh(r/2)", H, std::nullopt,
      model(h2, [](auto r) { return log(tanh(0.5 * r)); }));
  add("H2-ln-sinh-r", "H^2 radial", "ln sinh r", Q, 1.0, model(h2, [](auto r) { return log(sinh(r)); }));
  add("S2-radial-w4", "S^2 radial", "ln sin r ln tan(r/2) - 2 int cot r ln tan(r/2)", P, std::nullopt,
      [count, s2, cfg]() { return on_model(s2, closed_form_basis(ClosedFormKind::kSpherical, 2, cfg)[3], count); });
  add("H2-radial-w4", "H^2 radial", "ln sinh r ln tanh(r/2) - 2 int coth r ln tanh(r/2)", P, std::nullopt,
      [count, h2, cfg]() { return on_model(h2, closed_form_basis(ClosedFormKind::kHyperbolic, 2, cfg)[3], count); });
  add("S4-numeric-w4", "S^4 radial", "fourth numeric basis function y1 I2 - I3", P, std::nullopt,
      [count, cfg]() {
        const ModelSpace s4 = ModelSpace::sphere(4);
        return on_model(s4, radial_biharmonic_basis(s4, cfg)[3], count);
      });

  // Conformally flat models.
  add("confS2-ln-t", "S^2 conformal", "ln t", H, std::nullopt,
      [count]() { return on_conformal(1, 2, RadialField([](auto t) { return log(t); }), count); });
  add("confS2-ln-1+t2", "S^2 conformal", "ln(1 + t^2)", Q, 1.0,
      [count]() { return on_conformal(1, 2, RadialField([](auto t) { return log(1.0 + t * t); }), count); });
  add("confS2-w4", "S^2 conformal", "ln t ln(1+t^2) - 2 int ln(1+t^2)/t", P, std::nullopt,
      [count, cfg]() { return on_conformal(1, 2, conformal_closed_form_basis(1, cfg)[3], count); });
  add("confH2-ln-1-t2", "H^2 conformal", "ln(1 - t^2)", Q, -1.0,
      [count]() { return on_conformal(-1, 2, RadialField([](auto t) { return log(1.0 - t * t); }), count); });
  add("confH2-w4", "H^2 conformal", "ln t ln(1-t^2) - 2 int ln(1-t^2)/t", P, std::nullopt,
      [count, cfg]() { return on_conformal(-1, 2, conformal_closed_form_basis(-1, cfg)[3], count); });
  add("confS3-arctan", "S^3 conformal", "arctan t", P, std::nullopt,
      [count]() { return on_conformal(1, 3, RadialField([](auto t) { return atan(t); }), count); });

  // Products u(r) v_k(theta) on the punctured plane and on S^2, H^2.
  const ModelSpace r2 = ModelSpace::euclidean(2);
  add("R2-cos2theta", "R^2", "cos 2 theta = (x1^2 - x2^2)/|x|^2, bounded", P, std::nullopt,
      euclid(2, [](auto x) { return (x[0] * x[0] - x[1] * x[1]) / squared_norm(x); }));
  add("R2-sin2theta", "R^2", "sin 2 theta = 2 x1 x2/|x|^2, bounded", P, std::nullopt,
      euclid(2, [](auto x) { return 2.0 * x[0] * x[1] / squared_norm(x); }));
  add("R2-r4cos2theta", "R^2", "r^4 cos 2 theta, unbounded", P, std::nullopt,
      euclid(2, [](auto x) { return squared_norm(x) * (x[0] * x[0] - x[1] * x[1]); }));
  add("R2-sep-k2", "R^2 product", "(r^4/12 - 1/4) v2 from the separable engine", P, std::nullopt,
      [count, seed, r2, cfg]() {
        SeparableOptions o;
        o.quadrature = cfg;
        const SeparableBiharmonic b = build(r2, 2, detail::planar_harmonic(2), {0, 0, 1, 1}, o);
        return on_product(r2, b.radial(), detail::planar_harmonic(2), count, seed, b.working());
      });
  add("S2-sep-k1", "S^2 product", "(2 tan(r/2) ln sin(r/2) + 2 cot(r/2) ln cos(r/2)) v1", P, std::nullopt,
      [count, seed, s2]() {
        return on_product(s2, RadialField([](auto r) {
                            const auto h = 0.5 * r;
                            return 2.0 * tan(h) * log(sin(h)) + 2.0 * cot(h) * log(cos(h));
                          }),
                          detail::planar_harmonic(1), count, seed);
      });
  add("H2-sep-k1", "H^2 product", "(2 tanh(r/2) ln sinh(r/2) - 2 coth(r/2) ln cosh(r/2)) v1", P, std::nullopt,
      [count, seed, h2]() {
        return on_product(h2, RadialField([](auto r) {
                            const auto h = 0.5 * r;
                            return 2.0 * tanh(h) * log(sinh(h)) - 2.0 * coth(h) * log(cosh(h));
                          }),
                          detail::planar_harmonic(1), count, seed);
      });
  add("S2-sep-k2", "S^2 product", "(1 + 4 tan^2(r/2) ln sin(r/2) - 2 cot^2(r/2) ln cos(r/2)) v2", P, std::nullopt,
      [count, seed, s2]() {
        return on_product(s2, RadialField([](auto r) {
                            const auto h = 0.5 * r;
                            const auto t = tan(h);
                            const auto ct = cot(h);
                            return 1.0 + 4.0 * t * t * log(sin(h)) - 2.0 * ct * ct * log(cos(h));
                          }),
                          detail::planar_harmonic(2), count, seed);
      });
  add("S3-sep-k1-numeric", "S^3 product", "c3 up1 + c4 up2 from the numeric fundamental pair, k = 1", P,
      std::nullopt, [count, seed, s3, cfg]() {
        SeparableOptions o;
        o.quadrature = cfg;
        const SphericalHarmonic v = harmonic_basis(3, 1).front();
        const SeparableBiharmonic b = build(s3, 1, v, {0, 0, 1, 1}, o);
        return on_product(s3, b.radial(), v, count, seed, b.working());
      });

  // Positive-Laplacian family, bounded fixtures.
  auto family = [count, seed](PositiveLaplacianFamily f) {
    return [count, seed, f]() { return on_euclidean(f.m, family_field(f), count, seed); };
  };
  add("R5-family", "R^5", "|x|^2 - |x|^-1", P, std::nullopt, family({5, 0, 0, 1, -1}));
  add("R4-family", "R^4", "|x|^-2 + |x|^2 + ln|x|", P, std::nullopt, family({4, 0, 1, 1, 1}));
  add("R2-family", "R^2", "3 + 2 ln|x| + 5|x|^2", Q, 20.0, family({2, 3, 2, 5, 0}));
  add("R3-family-flipped", "R^3", "1 - |x|^2 - |x|, Delta < 0", P, std::nullopt, family({3, 1, 0, -1, -1}));
  add("R3-x3-over-r", "R^3", "x3/|x|, bounded", P, std::nullopt, euclid(3, [](auto x) { return x[2] / norm(x); }));
  add("R3-cos-r-cos-theta", "R^3", "cos|x| x3/|x|, bounded control", N, std::nullopt,
      euclid(3, [](auto x) {
        const auto r = norm(x);
        return cos(r) * x[2] / r;
      }));
  add("R4-x1-over-r", "R^4", "x1/|x|, bounded but not biharmonic", N, std::nullopt,
      euclid(4, [](auto x) { return x[0] / norm(x); }));
  return c;
}

inline CatalogResult run_entry(const CatalogEntry& e, double tau = 1e-6) {
  CatalogResult r;
  r.name = e.name;
  r.space = e.space;
  r.expected = e.expected;
  r.expected_constant = e.constant;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Subject s = e.build();
    r.report = classify(s.probe, s.sampler, tau);
    r.pass = r.report.verdict == e.expected;
    std::ostringstream d;
    if (!r.pass) d << "expected " << to_string(e.expected) << ", observed " << to_string(r.report.verdict);
    if (e.constant) {
      const double dev = std::abs(r.report.laplacian_average - *e.constant);
      if (dev > 1e-6 * (1.0 + std::abs(*e.constant))) {
        r.pass = false;
        d << (d.tellp() > 0 ? "; " : "") << "Laplacian constant " << r.report.laplacian_average << ", expected "
          << *e.constant;
      }
    }
    r.diagnostics = d.str();
  } catch (const Error& ex) {
    r.pass = false;
    r.diagnostics = ex.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline CatalogRun run_catalog(double tau = 1e-6, std::size_t count = 50, std::uint64_t seed = 20240901,
                              const QuadratureConfig& cfg = {}) {
  CatalogRun run;
  for (const auto& e : catalog(count, seed, cfg)) run.results.push_back(run_entry(e, tau));
  return run;
}

inline void to_json(nlohmann::json& j, const CatalogResult& r) {
  j = nlohmann::json{{"name", r.name},
                     {"space", r.space},
                     {"expected", to_string(r.expected)},
                     {"observed", to_string(r.report.verdict)},
                     {"pass", r.pass},
                     {"report", r.report},
                     {"seconds", r.seconds}};
  if (r.expected_constant) j["expected_constant"] = *r.expected_constant;
  if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
}

inline void to_json(nlohmann::json& j, const CatalogRun& run) {
  j = nlohmann::json{{"entries", run.results}, {"pass", run.all_passed()}};
}

/// Fixed-width table: name, space, expected, observed, max|Delta f|, max|Delta^2 f|, PASS/FAIL.
inline std::string format_table(const CatalogRun& run) {
  std::ostringstream o;
  o.imbue(std::locale::classic());
  o << std::left << std::setw(22) << "name" << std::setw(16) << "space" << std::setw(19) << "expected"
    << std::setw(19) << "observed" << std::setw(12) << "max|Lap|" << std::setw(12) << "max|BiLap|"
    << "status\n";
  for (const auto& r : run.results) {
    o << std::left << std::setw(22) << r.name << std::setw(16) << r.space << std::setw(19) << to_string(r.expected)
      << std::setw(19) << to_string(r.report.verdict) << std::scientific << std::setprecision(2) << std::setw(12)
      << r.report.max_laplacian << std::setw(12) << r.report.max_bilaplacian << std::defaultfloat
      << (r.pass ? "PASS" : "FAIL");
    if (!r.pass && !r.diagnostics.empty()) o << "  " << r.diagnostics;
    o << '\n';
  }
  return o.str();
}

}  // namespace biharm
