#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "biharm/geometry.hpp"
#include "oracles.hpp"

namespace biharm {
namespace {

const oracle::Fn1 kFlat = [](double r) { return 1.0 / r; };
const oracle::Fn1 kSphere = [](double r) { return std::cos(r) / std::sin(r); };
const oracle::Fn1 kHyper = [](double r) { return std::cosh(r) / std::sinh(r); };

TEST(Warp, RejectsNonPositiveSigma) {
  EXPECT_THROW(WarpFunction(WarpTag::kCustom, RadialField([](auto r) { return r - 1.0; }), {0.0, 5.0}), DomainError);
  EXPECT_THROW(WarpFunction(WarpTag::kCustom, RadialField([](auto r) { return sin(r); }), {0.0, 4.0}), DomainError);
  EXPECT_THROW(WarpFunction(WarpTag::kCustom, RadialField([](auto r) { return r; }), {2.0, 1.0}), DomainError);
  EXPECT_NO_THROW(WarpFunction(WarpTag::kCustom, RadialField([](auto r) { return r * r; }), {0.0, 10.0}));
  EXPECT_THROW(WarpFunction::from_tag(WarpTag::kCustom), DomainError);
}

TEST(Model, DimensionAndDomainChecks) {
  EXPECT_THROW(ModelSpace::euclidean(1), DomainError);
  EXPECT_THROW(ModelSpace::sphere(3).separable_operator(-1), DomainError);
  EXPECT_THROW(laplacian_radial(ModelSpace::sphere(3), RadialField([](auto r) { return r; }), 3.5), DomainError);
}

TEST(Model, LaplacianRadialExamples) {
  const ModelSpace r3 = ModelSpace::euclidean(3);
  EXPECT_NEAR(laplacian_radial(r3, RadialField([](auto r) { return r * r; }), 2.0), 6.0, 1e-12);
  for (double r : {0.3, 1.0, 4.0}) EXPECT_NEAR(laplacian_radial(r3, RadialField([](auto t) { return 1.0 / t; }), r), 0.0, 1e-12);

  const ModelSpace s3 = ModelSpace::sphere(3);
  const RadialField rcot([](auto r) { return r * cot(r); });
  EXPECT_NEAR(laplacian_radial(s3, rcot, 1.0), -2.0, 1e-12);
  const oracle::Fn1 u = [](double r) { return r * std::cos(r) / std::sin(r); };
  EXPECT_NEAR(oracle::radial_laplacian(u, kSphere, 3, 1.0), -2.0, 1e-8);
  for (double r : {0.4, 1.7, 2.8}) EXPECT_NEAR(oracle::radial_laplacian(u, kSphere, 3, r), -2.0, 1e-7);
}

TEST(Model, LaplacianRadialAgreesWithFiniteDifferences) {
  const auto u = [](auto r) { return exp(-r) * sin(2.0 * r) + log(1.0 + r); };
  const oracle::Fn1 g = [&u](double r) { return u(r); };
  const struct {
    ModelSpace space;
    oracle::Fn1 ls;
  } cases[] = {{ModelSpace::euclidean(4), kFlat}, {ModelSpace::sphere(5), kSphere}, {ModelSpace::hyperbolic(3), kHyper}};
  for (const auto& c : cases)
    for (double r : {0.5, 1.2, 2.1}) {
      const double jet = laplacian_radial(c.space, RadialField(u), r);
      EXPECT_LT(oracle::rel_err(jet, oracle::radial_laplacian(g, c.ls, c.space.dimension(), r)), 1e-7);
      const oracle::Fn1 L = oracle::radial_laplacian_fn(g, c.ls, c.space.dimension(), 1e-3);
      const double bi = bilaplacian_radial(c.space, RadialField(u), r);
      EXPECT_LT(oracle::rel_err(bi, oracle::radial_laplacian(L, c.ls, c.space.dimension(), r, 2e-2)), 1e-4);
    }
}

TEST(Model, BilaplacianRadialExamples) {
  const ModelSpace s3 = ModelSpace::sphere(3);
  for (double r : {0.2, 1.0, 2.0, 3.0}) EXPECT_NEAR(bilaplacian_radial(s3, RadialField([](auto t) { return t; }), r), 0.0, 1e-11);
  const ModelSpace r2 = ModelSpace::euclidean(2);
  for (double r : {0.3, 1.0, 2.5})
    EXPECT_NEAR(bilaplacian_radial(r2, RadialField([](auto t) { return t * t * log(t); }), r), 0.0, 1e-11);

  const ModelSpace r3 = ModelSpace::euclidean(3);
  const RadialField cube([](auto t) { return t * t * t; });
  EXPECT_NEAR(bilaplacian_radial(r3, cube, 1.0), 24.0, 1e-10);
  EXPECT_NEAR(bilaplacian_radial(r3, cube, 2.0), 12.0, 1e-10);
  const oracle::Fn1 L = oracle::radial_laplacian_fn([](double r) { return r * r * r; }, kFlat, 3);
  EXPECT_NEAR(oracle::radial_laplacian(L, kFlat, 3, 1.0, 1e-2), 24.0, 1e-4);
}

TEST(Model, SeparableFactorExamples) {
  const ModelSpace r2 = ModelSpace::euclidean(2);
  const RadialField r4([](auto r) { return ipow(r, 4); });
  EXPECT_NEAR(laplacian_separable_radial_factor(r2, r4, 2, 1.0), 12.0, 1e-12);
  // Oracle: Euclidean jets on r^4 v2 with v2 = (x1^2 - x2^2)/r^2, evaluated at x = (1, 0).
  const ScalarField product(2, [](auto x) { return squared_norm(x) * (x[0] * x[0] - x[1] * x[1]); });
  EXPECT_NEAR(euclidean_laplacian(product, std::vector<double>{1.0, 0.0}), 12.0, 1e-12);

  for (int m : {2, 3, 5})
    for (int k : {1, 2, 3}) {
      const ModelSpace s = ModelSpace::euclidean(m);
      const RadialField rk([k](auto r) { return ipow(r, k); });
      EXPECT_NEAR(laplacian_separable_radial_factor(s, rk, k, 1.3), 0.0, 1e-11);
    }
  const ModelSpace s2 = ModelSpace::sphere(2);
  for (double r : {0.4, 1.5, 2.7})
    EXPECT_NEAR(laplacian_separable_radial_factor(s2, RadialField([](auto t) { return cot(0.5 * t); }), 1, r), 0.0, 1e-11);

  for (double r : {0.5, 1.0, 2.0}) {
    EXPECT_NEAR(bilaplacian_separable_radial_factor(r2, r4, 2, r), 0.0, 1e-10);
    EXPECT_NEAR(bilaplacian_separable_radial_factor(r2, RadialField([](auto t) { return ipow(t, -2); }), 2, r), 0.0, 1e-9);
  }
  const RadialField r3([](auto r) { return ipow(r, 3); });
  const double bi = bilaplacian_separable_radial_factor(r2, r3, 2, 1.0);
  EXPECT_GT(std::abs(bi), 1.0);
  const ScalarField r3v2(2, [](auto x) { return norm(x) * (x[0] * x[0] - x[1] * x[1]); });
  EXPECT_NEAR(euclidean_bilaplacian(r3v2, std::vector<double>{1.0, 0.0}), bi, 1e-9);
}

TEST(Model, ConformalOperatorMatchesChangeOfVariable) {
  // With t = tan(r/2) (tanh(r/2) on H^m) the conformal model is the warped one, so both operators agree on u(t(r)).
  const int m = 3;
  const RadialOperator conf = conformal_radial_operator(1, m);
  const ModelSpace s3 = ModelSpace::sphere(m);
  const auto u = [](auto t) { return log(1.0 + t) * t; };
  for (double t : {0.3, 0.9, 2.0}) {
    const double r = 2.0 * std::atan(t);
    const RadialField ur([u](auto s) { return u(tan(0.5 * s)); });
    EXPECT_LT(oracle::rel_err(conf.apply(RadialField(u), t), laplacian_radial(s3, ur, r)), 1e-11);
    EXPECT_LT(oracle::rel_err(conf.apply_twice(RadialField(u), t), bilaplacian_radial(s3, ur, r)), 1e-9);
  }
  const RadialOperator hconf = conformal_radial_operator(-1, 2);
  const ModelSpace h2 = ModelSpace::hyperbolic(2);
  for (double t : {0.2, 0.5, 0.8}) {
    const double r = 2.0 * std::atanh(t);
    const RadialField ur([u](auto s) { return u(tanh(0.5 * s)); });
    EXPECT_LT(oracle::rel_err(hconf.apply(RadialField(u), t), laplacian_radial(h2, ur, r)), 1e-11);
  }
  EXPECT_THROW(conformal_radial_operator(0, 2), DomainError);
  EXPECT_THROW(hconf.apply(RadialField(u), 1.5), DomainError);
}

}  // namespace
}  // namespace biharm
