#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "biharm/sphere.hpp"
#include "oracles.hpp"

namespace biharm {
namespace {

using P = HomogeneousPolynomial;

const oracle::Fn1 kCot = [](double r) { return std::cos(r) / std::sin(r); };

TEST(Sampling, PointsAreUnitDeterministicAndOutsideCaps) {
  const Point north = {0, 0, 1};
  const std::vector<Cap> caps = {{north, 0.4}};
  const auto a = sample_sphere(2, 200, 11, caps);
  const auto b = sample_sphere(2, 200, 11, caps);
  ASSERT_EQ(a.size(), 200u);
  EXPECT_EQ(a, b);
  for (const auto& x : a) {
    EXPECT_NEAR(norm(x), 1.0, 1e-14);
    EXPECT_GT(std::acos(std::clamp(x[2], -1.0, 1.0)), 0.4);
  }
  EXPECT_NE(sample_sphere(2, 10, 12), sample_sphere(2, 10, 11));
}

TEST(Sphere, LaplacianOfLogOneMinusX3IsMinusOne) {
  // Intrinsic oracle: f depends on the polar angle phi only, cos(phi) = x3,
  // so Delta f = f'' + cot(phi) f' with f(phi) = ln(1 - cos phi).
  const oracle::Fn1 g = [](double phi) { return std::log(1.0 - std::cos(phi)); };
  for (double phi : {0.5, 1.2, 2.0, 2.9}) EXPECT_NEAR(oracle::radial_laplacian(g, kCot, 2, phi), -1.0, 1e-8);

  const SphereFunction f = SphereFunction::project(2, ScalarField(3, [](auto x) { return log(1.0 - x[2]); }));
  for (const auto& x : sample_sphere(2, 50, 3, {{{0, 0, 1}, 0.2}})) {
    EXPECT_NEAR(sphere_laplacian(f, x), -1.0, 1e-8);
    EXPECT_NEAR(sphere_laplacian_tangential(f, x), -1.0, 1e-8);
    EXPECT_NEAR(sphere_bilaplacian(f, x), 0.0, 1e-7);
    EXPECT_NEAR(sphere_bilaplacian(f, x, SphereRoute::kAmbientCorrection), 0.0, 1e-7);
  }
}

TEST(Sphere, LaplacianOfLinearAndConstant) {
  for (int m : {2, 3, 5}) {
    HomogeneousPolynomial x1(m + 1, 1);
    x1.add_term([m] { Exponents e(static_cast<std::size_t>(m + 1), 0); e[0] = 1; return e; }(), 1.0);
    const SphereFunction f = SphereFunction::restriction(x1);
    const SphereFunction c = SphereFunction::restriction(P::constant(m + 1, 2.5));
    for (const auto& x : sample_sphere(m, 10, 5)) {
      EXPECT_NEAR(sphere_laplacian(f, x), -m * x[0], 1e-11);
      EXPECT_NEAR(sphere_laplacian(c, x), 0.0, 1e-12);
    }
  }
}

TEST(Sphere, ThreeSphereFamilyIsBiharmonic) {
  // (a x1 + b x2 + c x3)/sqrt(x1^2 + x2^2 + x3^2) on S^3, away from the poles of x4.
  const SphereFunction f = SphereFunction::project(
      3, ScalarField(4, [](auto x) { return (1.5 * x[0] - x[1] + 0.25 * x[2]) / sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }));
  const std::vector<Cap> caps = {{{0, 0, 0, 1}, 0.3}, {{0, 0, 0, -1}, 0.3}};
  double lap = 0;
  for (const auto& x : sample_sphere(3, 50, 9, caps)) {
    EXPECT_NEAR(sphere_bilaplacian(f, x), 0.0, 1e-7);
    lap = std::max(lap, std::abs(sphere_laplacian(f, x)));
  }
  EXPECT_GT(lap, 1e-2);
}

TEST(Sphere, HarmonicRestrictionsAreBiEigenfunctions) {
  for (int m : {2, 3}) {
    for (int k = 0; k <= 3; ++k) {
      const double lambda = sphere_eigenvalue(m + 1, k);
      for (const auto& h : harmonic_basis(m + 1, k)) {
        const SphereFunction f = SphereFunction::restriction(h.poly());
        for (const auto& x : sample_sphere(m, 8, 2)) {
          const double v = f(x);
          EXPECT_NEAR(sphere_laplacian(f, x), -lambda * v, 1e-9 * (1 + lambda));
          EXPECT_NEAR(sphere_bilaplacian(f, x), lambda * lambda * v, 1e-8 * (1 + lambda * lambda));
        }
      }
    }
  }
}

TEST(Sphere, RoutesAgreeAndThreeSphereCorrectionVanishes) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int m : {2, 3, 5}) {
    for (int trial = 0; trial < 4; ++trial) {
      std::vector<double> a(static_cast<std::size_t>(m + 1));
      for (auto& v : a) v = U(rng);
      const SphereFunction f = SphereFunction::project(m, ScalarField(m + 1, [a, m](auto x) {
                                                         decltype(x[0] * 1.0) s(0.0);
                                                         for (std::size_t i = 0; i < a.size(); ++i) s = s + a[i] * x[i];
                                                         return exp(s) * cos(x[0] - x[m]);
                                                       }));
      for (const auto& x : sample_sphere(m, 10, 100 + trial)) {
        const double rs1 = sphere_bilaplacian(f, x);
        const double rs2 = sphere_bilaplacian(f, x, SphereRoute::kAmbientCorrection);
        EXPECT_LT(std::abs(rs1 - rs2), 1e-9 * (1 + std::abs(rs2)));
        if (m == 3) {
          EXPECT_EQ(rs1, euclidean_bilaplacian(f.extension(), unit_point(x)));
        }
      }
    }
  }
}

TEST(Sphere, PolynomialPathExamples) {
  const P x1x2 = P::monomial({1, 1, 0});
  for (const auto& x : sample_sphere(2, 10, 4)) {
    EXPECT_NEAR(bilaplacian_poly_restriction(x1x2, x), 36.0 * x[0] * x[1], 1e-11);
    EXPECT_NEAR(bilaplacian_poly_restriction(P::radius_squared(3), x), 0.0, 1e-11);
  }
  const P F = P::monomial({2, 2, 0});
  const Point x = {1, 0, 0};
  EXPECT_NEAR(bilaplacian_poly_restriction(F, x), sphere_bilaplacian(SphereFunction::restriction(F), x), 1e-7);
  const double ny = std::sqrt(0.98);
  const Point y = {0.3 / ny, 0.5 / ny, -0.8 / ny};
  EXPECT_LT(oracle::rel_err(bilaplacian_poly_restriction(F, y), sphere_bilaplacian(SphereFunction::restriction(F), y)), 1e-7);
}

TEST(Spectrum, ClosedFormRows) {
  const auto s3 = spectra(3, 2);
  ASSERT_EQ(s3.size(), 3u);
  EXPECT_EQ(s3[1].laplace, 3);
  EXPECT_EQ(s3[1].bi, 9);
  EXPECT_EQ(s3[1].buckling, 3);
  EXPECT_EQ(s3[2].laplace, 8);
  EXPECT_EQ(s3[2].bi, 64);
  const auto s2 = spectra(2, 2);
  EXPECT_EQ(s2[2].laplace, 6);
  EXPECT_EQ(s2[2].bi, 36);
  EXPECT_EQ(s2[2].buckling, 6);
  EXPECT_EQ(degree2_buckling_eigenvalue(2), 6);
  EXPECT_EQ(spectra(4, 1, {3})[1].k_laplacian.at(3), 64);
  EXPECT_EQ(spectra(2, 1, {3})[1].k_laplacian.at(3), 8);
  const auto s4 = spectra(4, 0);
  ASSERT_EQ(s4.size(), 1u);
  EXPECT_EQ(s4[0].laplace, 0);
}

TEST(Buckling, HarmonicPlusConstant) {
  const auto samples = sample_sphere(2, 50, 8);
  const SphericalHarmonic h(P::monomial({1, 1, 0}));
  EXPECT_LT(buckling_check(h, 7.0, samples).max_residual, 1e-6);
  const SphericalHarmonic zero(P(3, 2));
  const auto r = buckling_check(zero, 1.0, samples);
  EXPECT_EQ(r.max_residual, 0.0);
}

TEST(Buckling, RandomDegreeTwoRestrictions) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1, 1);
  for (int m : {2, 3, 4, 6}) {
    P p(m + 1, 2);
    for (const auto& e : monomials(m + 1, 2)) p.add_term(e, U(rng));
    const auto split = decompose_degree2(p, m + 1);
    const SphereFunction f = SphereFunction::restriction(p);
    const double nu = degree2_buckling_eigenvalue(m);
    EXPECT_EQ(nu, sphere_eigenvalue(m + 1, 2));
    for (const auto& x : sample_sphere(m, 20, 6)) {
      const auto o = sphere_operators(f, x);
      EXPECT_LT(std::abs(o.bilaplacian + nu * o.laplacian), 1e-6);
    }
    EXPECT_LT(buckling_check(split.harmonic, split.radial_coefficient, sample_sphere(m, 20, 6)).max_residual, 1e-6);
  }
}

TEST(Sphere, NonHomogeneousDeclarationIsRejected) {
  EXPECT_THROW(SphereFunction::homogeneous(2, ScalarField(3, [](auto x) { return x[0]; })), DomainError);
  EXPECT_THROW(SphereFunction::project(2, ScalarField(4, [](auto x) { return x[0]; })), DomainError);
}

}  // namespace
}  // namespace biharm
