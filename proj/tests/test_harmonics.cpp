#include <gtest/gtest.h>

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "biharm/harmonics.hpp"

namespace biharm {
namespace {

using P = HomogeneousPolynomial;

TEST(Harmonics, PolyLaplacianExamples) {
  EXPECT_TRUE(poly_laplacian(P::monomial({2, 0}) - P::monomial({0, 2})).is_zero());
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(poly_laplacian(P::radius_squared(n)), P::constant(n, 2.0 * n));
  EXPECT_EQ(poly_laplacian(P::monomial({3, 0, 0})), 6.0 * P::monomial({1, 0, 0}));
}

// Independent count: the Laplacian maps degree-k onto degree-(k-2) polynomials,
// so the kernel dimension is the nullity of its coefficient matrix.
int nullity_of_laplacian(int n, int k) {
  const auto src = monomials(n, k);
  const auto dst = monomials(n, k - 2);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dst.size()), static_cast<Eigen::Index>(src.size()));
  for (std::size_t j = 0; j < src.size(); ++j) {
    const P lap = poly_laplacian(P::monomial(src[j]));
    for (std::size_t i = 0; i < dst.size(); ++i) M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = lap.coefficient(dst[i]);
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  return static_cast<int>(src.size()) - static_cast<int>(lu.rank());
}

TEST(Harmonics, BasisSizeMatchesExhaustiveNullspace) {
  EXPECT_EQ(harmonic_basis(3, 2).size(), 5u);
  EXPECT_EQ(nullity_of_laplacian(3, 2), 5);
  for (int n = 2; n <= 5; ++n)
    for (int k = 2; k <= 4; ++k) {
      EXPECT_EQ(static_cast<int>(harmonic_basis(n, k).size()), nullity_of_laplacian(n, k)) << n << " " << k;
      EXPECT_EQ(harmonic_dimension(n, k), nullity_of_laplacian(n, k));
    }
}

TEST(Harmonics, BasisElementsAreHarmonicAndIndependent) {
  for (int n : {2, 3, 4}) {
    for (int k = 0; k <= 4; ++k) {
      const auto basis = harmonic_basis(n, k);
      const auto mons = monomials(n, k);
      Eigen::MatrixXd C(static_cast<Eigen::Index>(mons.size()), static_cast<Eigen::Index>(basis.size()));
      for (std::size_t j = 0; j < basis.size(); ++j) {
        EXPECT_TRUE(poly_laplacian(basis[j].poly()).is_zero());
        EXPECT_EQ(basis[j].degree(), k);
        for (std::size_t i = 0; i < mons.size(); ++i)
          C(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = basis[j].poly().coefficient(mons[i]);
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(C);
      EXPECT_EQ(static_cast<std::size_t>(lu.rank()), basis.size());
    }
  }
}

TEST(Harmonics, PlanarDegreeTwoSpansTheExpectedPair) {
  const auto basis = harmonic_basis(2, 2);
  ASSERT_EQ(basis.size(), 2u);
  // Every element lies in span{x1^2 - x2^2, x1 x2}: x1^2 and x2^2 coefficients cancel.
  for (const auto& h : basis) EXPECT_DOUBLE_EQ(h.poly().coefficient({2, 0}), -h.poly().coefficient({0, 2}));
}

TEST(Harmonics, DegreeZeroIsTheConstant) {
  for (int n = 2; n <= 6; ++n) {
    const auto basis = harmonic_basis(n, 0);
    ASSERT_EQ(basis.size(), 1u);
    EXPECT_EQ(basis[0].poly().degree(), 0);
    EXPECT_FALSE(basis[0].poly().is_zero());
  }
}

TEST(Harmonics, NonHarmonicPolynomialIsRejected) {
  EXPECT_THROW(SphericalHarmonic(P::monomial({2, 0, 0})), DomainError);
  EXPECT_THROW(SphericalHarmonic(P::monomial({2, 0}) - (1.0 - 1e-6) * P::monomial({0, 2})), DomainError);
  EXPECT_NO_THROW(SphericalHarmonic(P::monomial({2, 0}) - (1.0 + 1e-15) * P::monomial({0, 2})));
}

TEST(Harmonics, DecomposeDegreeTwo) {
  const auto a = decompose_degree2(P::radius_squared(3), 3);
  EXPECT_TRUE(a.harmonic.poly().is_zero());
  EXPECT_DOUBLE_EQ(a.radial_coefficient, 1.0);

  const P x1sq = P::monomial({2, 0});
  const auto b = decompose_degree2(x1sq, 2);
  EXPECT_DOUBLE_EQ(b.radial_coefficient, 0.5);
  EXPECT_EQ(b.harmonic.poly(), 0.5 * (P::monomial({2, 0}) - P::monomial({0, 2})));
  EXPECT_TRUE(poly_laplacian(b.harmonic.poly()).is_zero());
  EXPECT_EQ(b.harmonic.poly() + b.radial_coefficient * P::radius_squared(2), x1sq);

  const P x1x2 = P::monomial({1, 1});
  const auto c = decompose_degree2(x1x2, 2);
  EXPECT_EQ(c.harmonic.poly(), x1x2);
  EXPECT_DOUBLE_EQ(c.radial_coefficient, 0.0);
}

TEST(Harmonics, RandomDegreeTwoReassembles) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int n = 2; n <= 6; ++n) {
    P p(n, 2);
    for (const auto& e : monomials(n, 2)) p.add_term(e, U(rng));
    const auto d = decompose_degree2(p, n);
    const P back = d.harmonic.poly() + d.radial_coefficient * P::radius_squared(n);
    for (const auto& e : monomials(n, 2)) EXPECT_NEAR(back.coefficient(e), p.coefficient(e), 1e-14);
  }
}

TEST(Harmonics, EulerAndPowerIdentities) {
  const std::vector<double> ones = {1, 1, 1};
  const auto d = euler_radial_identities(P::monomial({1, 1, 1}), ones, 2.0);
  EXPECT_DOUBLE_EQ(d.euler_lhs, 3.0);
  EXPECT_DOUBLE_EQ(d.euler_rhs, 3.0);

  const std::vector<double> x4 = {0.3, -0.5, 1.2, 0.7};
  const auto e = euler_radial_identities(P::monomial({2, 0, 0, 1}), x4, 2.0);
  EXPECT_NEAR(e.power_lhs, 8.0, 1e-12);
  EXPECT_NEAR(e.power_rhs, 8.0, 1e-12);
  const auto f = euler_radial_identities(P::monomial({2, 0, 0, 1}), x4, -2.0);
  EXPECT_NEAR(f.power_lhs, 0.0, 1e-11);
  EXPECT_NEAR(f.power_rhs, 0.0, 1e-12);
}

TEST(Harmonics, JsonRoundTrip) {
  const P p = 3.0 * P::monomial({2, 1, 0}) - 0.25 * P::monomial({0, 1, 2});
  const nlohmann::json j = p;
  EXPECT_EQ(polynomial_from_json(j), p);
}

}  // namespace
}  // namespace biharm
