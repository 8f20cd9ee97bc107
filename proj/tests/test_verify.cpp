#include <gtest/gtest.h>

#include <cmath>

#include "biharm/verify.hpp"

namespace biharm {
namespace {

using P = HomogeneousPolynomial;

Probe restricted(const P& p) { return sphere_probe(SphereFunction::restriction(p)); }

TEST(Classify, ReferenceExamples) {
  const ModelSpace s3 = ModelSpace::sphere(3);
  const Sampler grid = Sampler::radial({0.3, std::numbers::pi - 0.3});
  const ResidualReport q = classify(model_radial_probe(s3, RadialField([](auto r) { return r * cot(r); })), grid);
  EXPECT_EQ(q.verdict, Verdict::kQuasiHarmonic);
  EXPECT_NEAR(q.laplacian_average, -2.0, 1e-9);
  EXPECT_EQ(classify(model_radial_probe(s3, RadialField([](auto r) { return r; })), grid).verdict,
            Verdict::kProperBiharmonic);
  const ScalarField cube(3, [](auto x) { return ipow(norm(x), 3); });
  EXPECT_EQ(classify(euclidean_probe(cube), Sampler::annulus(3, {0.3, 2.5})).verdict, Verdict::kNotBiharmonic);
  EXPECT_EQ(classify(model_radial_probe(ModelSpace::euclidean(3), RadialField([](auto r) { return ipow(r, 3); })),
                     Sampler::radial({0.3, 2.5}))
                .verdict,
            Verdict::kNotBiharmonic);
  const ScalarField lin(3, [](auto x) { return 2.0 * x[0] - x[2]; });
  EXPECT_EQ(classify(euclidean_probe(lin), Sampler::annulus(3, {0.3, 2.5})).verdict, Verdict::kHarmonic);
  EXPECT_THROW(classify(euclidean_probe(lin), Sampler::annulus(3, {0.3, 2.5}), 0.0), DomainError);
}

TEST(Residuals, BiEigenExamples) {
  const Sampler s2 = Sampler::sphere(2);
  const Sampler s3 = Sampler::sphere(3);
  EXPECT_LT(eigen_residual(restricted(P::monomial({1, 1, 0})), 36.0, s2), 1e-6);
  EXPECT_LT(eigen_residual(restricted(P::monomial({1, 0, 0, 0})), 9.0, s3), 1e-6);
  EXPECT_GT(eigen_residual(restricted(P::monomial({1, 0, 0, 0})), 8.0, s3), 1e-2);
  EXPECT_EQ(eigen_residual(restricted(P::constant(3, 4.0)), 0.0, s2), 0.0);
}

TEST(Residuals, BucklingExamples) {
  const P h2 = P::monomial({1, 1, 0, 0, 0});
  EXPECT_LT(buckling_residual(restricted(h2 + 3.0 * P::radius_squared(5)), 10.0, Sampler::sphere(4)), 1e-6);
  const SphereFunction h3c = SphereFunction::project(2, ScalarField(3, [](auto x) { return x[0] * x[1] * x[2] + 2.0 * squared_norm(x); }));
  EXPECT_LT(buckling_residual(sphere_probe(h3c), 12.0, Sampler::sphere(2)), 1e-6);
  const ScalarField harmonic(2, [](auto x) { return x[0] * x[0] - x[1] * x[1]; });
  EXPECT_LT(buckling_residual(euclidean_probe(harmonic), 3.7, Sampler::annulus(2, {0.5, 2.0})), 1e-9);
}

TEST(Evaluate, TooManySingularSamplesIsAnError) {
  const Probe flaky = [](const Point& x) {
    if (x[0] < 0.6) throw NumericError("pole");
    return OperatorSample{1, 0, 0};
  };
  EXPECT_THROW(evaluate(flaky, Sampler::radial({0.3, 2.5}, 50).points()), SamplingError);
  const Probe rare = [](const Point& x) {
    if (x[0] < 0.35) throw NumericError("pole");
    return OperatorSample{1, 0, 0};
  };
  const SampleSet s = evaluate(rare, Sampler::radial({0.3, 2.5}, 50).points());
  EXPECT_EQ(s.excluded, 2u);
  EXPECT_EQ(classify(s).excluded, 2u);
}

TEST(Catalog, EveryEntryMatchesItsExpectedVerdict) {
  const CatalogRun run = run_catalog();
  ASSERT_FALSE(run.results.empty());
  for (const auto& r : run.results) EXPECT_TRUE(r.pass) << r.name << ": " << r.diagnostics;
  EXPECT_TRUE(run.all_passed());
  const auto find = [&run](const std::string& name) {
    for (const auto& r : run.results)
      if (r.name == name) return r;
    ADD_FAILURE() << "missing entry " << name;
    return CatalogResult{};
  };
  EXPECT_EQ(find("S2-ln-sin-r").report.verdict, Verdict::kQuasiHarmonic);
  EXPECT_EQ(find("R2-r2lnr").report.verdict, Verdict::kProperBiharmonic);
  EXPECT_EQ(find("S3-rcotr").report.verdict, Verdict::kQuasiHarmonic);
}

TEST(Catalog, DeterministicForFixedSeed) {
  const CatalogRun a = run_catalog();
  const CatalogRun b = run_catalog();
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    EXPECT_EQ(a.results[i].report.max_bilaplacian, b.results[i].report.max_bilaplacian) << a.results[i].name;
    EXPECT_EQ(a.results[i].report.max_laplacian, b.results[i].report.max_laplacian) << a.results[i].name;
  }
}

TEST(Catalog, VerdictsAreScaleInvariant) {
  for (const auto& e : catalog()) {
    const Subject s = e.build();
    const Verdict base = classify(s.probe, s.sampler).verdict;
    for (double alpha : {1e-3, 1e3})
      EXPECT_EQ(classify(scaled_probe(s.probe, alpha), s.sampler).verdict, base) << e.name << " " << alpha;
  }
}

TEST(Catalog, VerdictsAreStableAcrossTolerances) {
  for (double tau : {1e-7, 3e-7, 1e-6, 3e-6, 1e-5}) {
    const CatalogRun run = run_catalog(tau);
    for (const auto& r : run.results) EXPECT_TRUE(r.pass) << "tau " << tau << " " << r.name << ": " << r.diagnostics;
  }
}

TEST(Catalog, JsonAndTable) {
  const CatalogRun run = run_catalog();
  const nlohmann::json j = run;
  EXPECT_EQ(j.at("entries").size(), run.results.size());
  EXPECT_NE(format_table(run).find("S3-rcotr"), std::string::npos);
  for (Verdict v : {Verdict::kHarmonic, Verdict::kQuasiHarmonic, Verdict::kProperBiharmonic, Verdict::kNotBiharmonic})
    EXPECT_EQ(verdict_from_string(to_string(v)), v);
}

}  // namespace
}  // namespace biharm
