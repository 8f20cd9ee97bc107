#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "biharm/field.hpp"
#include "biharm/jets.hpp"
#include "oracles.hpp"

namespace biharm {
namespace {

TEST(Jets, ConstantArithmeticIsPlainArithmetic) {
  const Jet1 a(1.25), b(-3.5);
  EXPECT_EQ((a + b).value(), 1.25 + -3.5);
  EXPECT_EQ((a * b).value(), 1.25 * -3.5);
  EXPECT_EQ((a - b).value(), 1.25 - -3.5);
  EXPECT_TRUE((a * b).is_constant());
  EXPECT_DOUBLE_EQ((a / b).value(), 1.25 / -3.5);
}

TEST(Jets, ChainRuleMatchesFiniteDifferences) {
  const auto check = [](auto f, double x) {
    const Jet1 j = f(Jet1::variable(x));
    const oracle::Fn1 g = [&](double t) { return f(t); };
    const oracle::Fn1 g2 = [&](double t) { return oracle::d2(g, t); };
    EXPECT_NEAR(j[0], g(x), 1e-14 * (1 + std::abs(j[0])));
    EXPECT_LT(oracle::rel_err(j[1], oracle::d1(g, x)), 1e-6);
    EXPECT_LT(oracle::rel_err(j[2], oracle::d2(g, x)), 1e-6);
    EXPECT_LT(oracle::rel_err(j[3], oracle::d1(g2, x, 1e-2)), 1e-5);
    EXPECT_LT(oracle::rel_err(j[4], oracle::d2(g2, x, 1e-2)), 5e-4);
  };
  check([](auto t) { return exp(sin(t)) * log(1.0 + t * t); }, 0.7);
  check([](auto t) { return sqrt(cosh(t)) / (2.0 + tanh(t)); }, -0.4);
  check([](auto t) { return atan(t * t) + asin(0.5 * t) - acos(0.3 * t); }, 0.9);
  check([](auto t) { return pow(1.0 + t, 2.5) * cot(t) + coth(t); }, 1.1);
  check([](auto t) { return atanh(0.5 * t) * ipow(t, -3) + tan(t); }, 0.6);
  check([](auto t) { return atan2(sin(t), 2.0 + cos(t)); }, 2.0);
}

TEST(Jets, Jet2DegradesToJet1WhenOneDirectionIsZero) {
  const auto f = [](auto s) { return exp(s) * sin(s) + s * s * s; };
  const Jet1 j1 = f(Jet1::variable(0.3));
  const Jet2 j2 = f(Jet2::linear(0.3, 1.0, 0.0));
  for (int i = 0; i <= 2; ++i) EXPECT_NEAR(j2(i, 0), j1[i], 1e-13 * (1 + std::abs(j1[i])));
  EXPECT_EQ(j2(0, 1), 0.0);
  EXPECT_EQ(j2(1, 1), 0.0);
  EXPECT_EQ(j2(2, 2), 0.0);
}

TEST(Jets, MixedPartialsAreSymmetric) {
  const ScalarField f(3, [](auto x) { return exp(x[0] * x[1]) * cos(x[2] + x[0]) / (1.0 + x[1] * x[1]); });
  const std::vector<double> p = {0.4, -0.7, 1.3};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      std::vector<Jet2> a(3), b(3);
      for (std::size_t k = 0; k < 3; ++k) a[k] = b[k] = Jet2(p[k]);
      a[i] = Jet2::linear(p[i], 1, 0);
      a[j] = Jet2::linear(p[j], 0, 1);
      b[j] = Jet2::linear(p[j], 1, 0);
      b[i] = Jet2::linear(p[i], 0, 1);
      const Jet2 ra = f(std::span<const Jet2>(a)), rb = f(std::span<const Jet2>(b));
      for (int s = 0; s <= 2; ++s)
        for (int t = 0; t <= 2; ++t) EXPECT_LT(oracle::rel_err(ra(s, t), rb(t, s)), 1e-10);
    }
}

TEST(Jets, ZeroDerivativeInputsMatchPlainEvaluation) {
  const ScalarField f(2, [](auto x) { return log(1.0 + x[0] * x[0]) * sinh(x[1]); });
  const std::vector<double> p = {0.8, -1.2};
  const std::vector<Jet1> j = {Jet1(p[0]), Jet1(p[1])};
  EXPECT_EQ(f(std::span<const Jet1>(j)).value(), f(std::span<const double>(p)));
}

TEST(Jets, SingularitiesRaiseNumericError) {
  EXPECT_THROW(log(-1.0), NumericError);
  EXPECT_THROW(sqrt(-0.5), NumericError);
  EXPECT_THROW(recip(0.0), NumericError);
  EXPECT_THROW(log(Jet1::variable(0.0)), NumericError);
}

TEST(Field, DirectionalDerivativesOfSquaredNorm) {
  const ScalarField f(3, [](auto x) { return squared_norm(x); });
  const std::vector<double> x = {1, 0, 0}, v = {1, 0, 0};
  const auto d = directional_derivatives(f, x, v, 4);
  const std::vector<double> expected = {1, 2, 2, 0, 0};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(d[i], expected[i], 1e-14);
}

TEST(Field, DirectionalSecondDerivativeOfSaddle) {
  const ScalarField f(3, [](auto x) { return x[0] * x[0] - x[1] * x[1]; });
  const std::vector<double> x = {0.3, -2.0, 5.0}, v = {0, 1, 0};
  EXPECT_NEAR(directional_derivatives(f, x, v, 2)[2], -2.0, 1e-14);
}

TEST(Field, LogNormDerivativesAgainstFiniteDifferences) {
  const ScalarField f(2, [](auto x) { return log(norm(x)); });
  const std::vector<double> x = {1, 0}, v = {1, 0};
  const auto d = directional_derivatives(f, x, v, 4);
  const std::vector<double> hand = {0, 1, -1, 2, -6};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(d[i], hand[i], 1e-12);
  const oracle::Fn1 g = [](double t) { return std::log(std::abs(t)); };
  EXPECT_NEAR(oracle::d1(g, 1.0), d[1], 1e-8);
  EXPECT_NEAR(oracle::d2(g, 1.0), d[2], 1e-6);
}

TEST(Field, EuclideanLaplacianExamples) {
  const std::vector<double> p3 = {0.3, -1.1, 0.7}, p4 = {0.3, -1.1, 0.7, 0.2};
  EXPECT_NEAR(euclidean_laplacian(ScalarField(3, [](auto x) { return squared_norm(x); }), p3), 6.0, 1e-12);
  EXPECT_NEAR(euclidean_laplacian(ScalarField(3, [](auto x) { return x[0] * x[0] - x[1] * x[1]; }), p3), 0.0, 1e-12);
  EXPECT_NEAR(euclidean_laplacian(ScalarField(4, [](auto x) { return recip(squared_norm(x)); }), p4), 0.0, 1e-11);
}

TEST(Field, LaplacianAgreesWithFiniteDifferenceOracle) {
  const ScalarField f(3, [](auto x) { return exp(x[0]) * sin(x[1]) * log(2.0 + x[2] * x[2]); });
  const oracle::FnN g = [](const std::vector<double>& x) {
    return std::exp(x[0]) * std::sin(x[1]) * std::log(2.0 + x[2] * x[2]);
  };
  const std::vector<double> p = {0.2, 0.9, -0.6};
  EXPECT_LT(oracle::rel_err(euclidean_laplacian(f, p), oracle::laplacian(g, p)), 1e-7);
  EXPECT_LT(oracle::rel_err(euclidean_bilaplacian(f, p), oracle::laplacian(oracle::laplacian_fn(g, 1e-2), p, 1e-2)),
            1e-4);
}

TEST(Field, BilaplacianExamples) {
  const ScalarField r4(3, [](auto x) {
    const auto s = squared_norm(x);
    return s * s;
  });
  for (const std::vector<double>& p : {std::vector<double>{1, 0, 0}, {0.3, -0.4, 2.0}})
    EXPECT_NEAR(euclidean_bilaplacian(r4, p), 120.0, 1e-10);
  const ScalarField cubic(3, [](auto x) { return x[0] * x[1] * x[2] + 4.0 * x[0] * x[0] * x[0] - x[1] * x[2] * x[2]; });
  EXPECT_NEAR(euclidean_bilaplacian(cubic, std::vector<double>{0.5, 1.5, -2.5}), 0.0, 1e-11);
  const ScalarField f(3, [](auto x) { return log(1.0 - x[2] / norm(x)); });
  for (const std::vector<double>& p : {std::vector<double>{0.6, 0.0, 0.8}, {0.0, 0.6, -0.8}, {0.48, 0.6, 0.64}})
    EXPECT_NEAR(euclidean_bilaplacian(f, p), -2.0, 1e-9);
}

TEST(Field, DimensionMismatchIsADomainError) {
  const ScalarField f(2, [](auto x) { return x[0]; });
  EXPECT_THROW(euclidean_laplacian(f, std::vector<double>{1, 2, 3}), DomainError);
}

}  // namespace
}  // namespace biharm
