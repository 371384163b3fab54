#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "aolab/criteria.hpp"
#include "aolab/error.hpp"
#include "aolab/generators.hpp"
#include "support.hpp"

namespace aolab {
namespace {

const cplx I{0.0, 1.0};

Vec vec2(cplx a, cplx b) { return (Vec(2) << a, b).finished(); }

TEST(IsUnitary, Examples) {
  const cplx d[] = {std::polar(1.0, std::numbers::pi / 3.0), -1.0};
  EXPECT_TRUE(is_unitary(CMatrix::diagonal(d)));
  EXPECT_FALSE(is_unitary(fixtures::jordan_block()));
  EXPECT_TRUE(is_unitary(fixtures::dft4()));
}

TEST(IsNormaloid, Examples) {
  const cplx d[] = {2.0, 1.0};
  EXPECT_TRUE(is_normaloid(CMatrix::diagonal(d)));

  const auto jordan = normaloid_check(fixtures::jordan_block());
  EXPECT_FALSE(jordan.normaloid);
  EXPECT_NEAR(jordan.spectral_radius, 1.0, 1e-12);
  EXPECT_NEAR(jordan.norm, testing::kGolden, 1e-12);

  const auto fx = normaloid_check(fixtures::normaloid_fixture());
  EXPECT_TRUE(fx.normaloid);
  EXPECT_TRUE(fx.powers_agree);
  EXPECT_NEAR(fx.norm, 3.0, 1e-12);
  EXPECT_FALSE(is_normal(fixtures::normaloid_fixture().mat()));
}

TEST(IsPowerBounded, Examples) {
  EXPECT_TRUE(is_power_bounded(fixtures::oblique_counterexample()));
  EXPECT_FALSE(is_power_bounded(fixtures::jordan_block()));
  const cplx d[] = {0.5, 0.9};
  EXPECT_TRUE(is_power_bounded(CMatrix::diagonal(d)));
}

TEST(IsPowerBounded, EmpiricalSideSeesTheGrowth) {
  const auto a = fixtures::jordan_block();
  const auto pb = power_boundedness(a, minimal_polynomial(a));
  EXPECT_FALSE(pb.structural);
  EXPECT_TRUE(pb.empirical_growth);
  EXPECT_TRUE(pb.agree);
  EXPECT_NEAR(pb.max_power_norm, testing::jordan_power_norm(1000), 1e-9 * 1000);
}

TEST(OrbitAnalyze, JordanOffKernelGrowsLinearly) {
  const auto a = fixtures::jordan_block();
  const auto rec = orbit_analyze(a, CVector(vec2(0.0, 1.0)), 2000);
  ASSERT_EQ(rec.norms.size(), 2001u);
  for (int n = 0; n <= 2000; ++n) {
    // Oracle: A^n (0,1) = (n, 1).
    EXPECT_DOUBLE_EQ(rec.norms[static_cast<std::size_t>(n)] * rec.norms[static_cast<std::size_t>(n)],
                     1.0 + static_cast<double>(n) * n);
  }
  EXPECT_EQ(rec.classification.kind, OrbitClass::polynomial_growth);
  EXPECT_EQ(rec.classification.degree, 1);
  ASSERT_TRUE(rec.structural_exponent.has_value());
  EXPECT_EQ(*rec.structural_exponent, 1);
}

TEST(OrbitAnalyze, JordanKernelVectorIsConstant) {
  const auto rec = orbit_analyze(fixtures::jordan_block(), CVector(vec2(1.0, 0.0)), 2000);
  for (double s : rec.norms) EXPECT_EQ(s, 1.0);
  EXPECT_EQ(rec.classification.kind, OrbitClass::convergent);
  EXPECT_DOUBLE_EQ(rec.classification.limit, 1.0);
  EXPECT_EQ(*rec.structural_exponent, 0);
}

TEST(OrbitAnalyze, ObliqueOrbitAlternates) {
  const auto rec = orbit_analyze(fixtures::oblique_counterexample(), CVector(vec2(2.0, 1.0)), 2000);
  // Oracle: A^n h = (1,0) + (-1)^n (1,1).
  for (std::size_t n = 0; n < rec.norms.size(); ++n) {
    EXPECT_NEAR(rec.norms[n], n % 2 == 0 ? std::sqrt(5.0) : 1.0, 1e-12);
  }
  EXPECT_EQ(rec.classification.kind, OrbitClass::bounded_nonconvergent);
}

TEST(OrbitAnalyze, ExponentialAndDecaying) {
  const cplx d[] = {1.01, 0.5};
  const auto a = CMatrix::diagonal(d);
  const auto grow = orbit_analyze(a, CVector(vec2(1.0, 1.0)), 2000);
  EXPECT_EQ(grow.classification.kind, OrbitClass::exponential_growth);
  EXPECT_NEAR(grow.classification.rate, 1.01, 1e-6);
  const auto decay = orbit_analyze(a, CVector(vec2(0.0, 1.0)), 2000);
  EXPECT_EQ(decay.classification.kind, OrbitClass::convergent);
  EXPECT_EQ(decay.classification.limit, 0.0);
}

TEST(OrbitAnalyze, OverflowIsEarlyExponential) {
  const cplx d[] = {10.0};
  const auto rec = orbit_analyze(CMatrix::diagonal(d), CVector::basis(1, 0), 2000);
  EXPECT_LT(rec.norms.size(), 400u);
  EXPECT_EQ(rec.classification.kind, OrbitClass::exponential_growth);
  EXPECT_NEAR(rec.classification.rate, 10.0, 1e-6);
}

TEST(OrbitAnalyze, Preconditions) {
  const auto a = fixtures::jordan_block();
  EXPECT_THROW(orbit_analyze(a, CVector(Vec::Zero(2)), 2000), Error);
  EXPECT_THROW(orbit_analyze(a, CVector(vec2(1.0, 0.0)), 99), Error);
  EXPECT_THROW(orbit_analyze(a, CVector::basis(3, 0), 2000), Error);
}

TEST(ClassifyOrbit, SyntheticSequences) {
  AnalysisConfig cfg;
  std::vector<double> quad, constant, geometric, alternating;
  for (int n = 0; n <= 2000; ++n) {
    quad.push_back(1.0 + static_cast<double>(n) * n);
    constant.push_back(2.0);
    geometric.push_back(std::pow(1.002, n));
    alternating.push_back(n % 3 == 0 ? 1.0 : 2.0);
  }
  const auto q = classify_orbit(quad, 3, cfg);
  EXPECT_EQ(q.kind, OrbitClass::polynomial_growth);
  EXPECT_EQ(q.degree, 2);
  EXPECT_EQ(classify_orbit(constant, 3, cfg).kind, OrbitClass::convergent);
  const auto g = classify_orbit(geometric, 3, cfg);
  EXPECT_EQ(g.kind, OrbitClass::exponential_growth);
  EXPECT_NEAR(g.rate, 1.002, 1e-9);
  EXPECT_EQ(classify_orbit(alternating, 3, cfg).kind, OrbitClass::bounded_nonconvergent);
}

TEST(TheoremCheck, Dft4AllTrue) {
  const auto r = theorem_check(fixtures::dft4());
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_EQ(r.minpoly_degree, 3);
  EXPECT_TRUE(r.unitary);
  EXPECT_TRUE(r.normaloid);
  EXPECT_TRUE(r.contraction);
  EXPECT_TRUE(r.orbits_convergent);
  EXPECT_TRUE(r.power_bounded);
  EXPECT_TRUE(r.consistent);
  EXPECT_FALSE(r.witness.has_value());
  EXPECT_EQ(r.orbit_certification, "certified via probes");
  // 4 basis + 20 random + 2 * C(3,2) mixing probes
  EXPECT_EQ(r.probes.size(), 4u + 20u + 6u);
}

TEST(TheoremCheck, JordanBlockAllFalseWithWitness) {
  const auto r = theorem_check(fixtures::jordan_block());
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_FALSE(r.unitary);
  EXPECT_FALSE(r.normaloid);
  EXPECT_FALSE(r.contraction);
  EXPECT_FALSE(r.orbits_convergent);
  EXPECT_FALSE(r.power_bounded);
  EXPECT_TRUE(r.consistent);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->vec(), vec2(0.0, 1.0));
}

TEST(TheoremCheck, ObliqueCounterexample) {
  const auto a = fixtures::oblique_counterexample();
  const auto r = theorem_check(a);
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_TRUE(r.power_bounded);
  EXPECT_FALSE(r.orbits_convergent);
  EXPECT_FALSE(r.unitary);
  EXPECT_FALSE(r.normaloid);
  EXPECT_FALSE(r.contraction);
  EXPECT_TRUE(r.consistent);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(orbit_analyze(a, *r.witness, 2000).classification.kind, OrbitClass::bounded_nonconvergent);

  // Of h_k + h_l and i h_k + h_l at least one oscillates: their norms carry
  // Re(g) and Im(g) of the same nonzero Gram coefficient g.
  int mixing = 0;
  int oscillating = 0;
  for (const auto& p : r.probes) {
    if (!p.gram) continue;
    ++mixing;
    EXPECT_GT(*p.gram, 1e-6);
    if (p.record.classification.kind != OrbitClass::convergent) ++oscillating;
  }
  EXPECT_EQ(mixing, 2);
  EXPECT_GE(oscillating, 1);
}

TEST(TheoremCheck, OutsideHypotheses) {
  const cplx d[] = {0.5, 1.0};
  const auto r = theorem_check(CMatrix::diagonal(d));
  EXPECT_FALSE(r.spectrum_in_circle);
  EXPECT_FALSE(r.unitary);
  EXPECT_TRUE(r.normaloid);
  EXPECT_TRUE(r.contraction);
  EXPECT_TRUE(r.orbits_convergent);
  EXPECT_TRUE(r.consistent);
}

TEST(TheoremCheck, MinusOneFrequencyNeedsTheRotatedProbe) {
  // z_k conj z_l = -1: eigenvalues 1 and -1 on oblique eigenvectors.
  const auto r = theorem_check(fixtures::oblique_counterexample());
  int rotated = 0;
  for (const auto& p : r.probes) {
    if (p.label.rfind("mix-i", 0) == 0) ++rotated;
  }
  EXPECT_EQ(rotated, 1);
}

TEST(PredictOrbit, AgreesWithFixtures) {
  const auto a = fixtures::jordan_block();
  const auto d = decompose(a, minimal_polynomial(a));
  const auto pred = predict_orbit(a, d, vec2(0.0, 1.0));
  EXPECT_EQ(pred.expected.kind, OrbitClass::polynomial_growth);
  EXPECT_EQ(pred.exponent, 1);
  EXPECT_NEAR(pred.relevant_radius, 1.0, 1e-12);

  const auto b = fixtures::oblique_counterexample();
  const auto db = decompose(b, minimal_polynomial(b));
  EXPECT_EQ(predict_orbit(b, db, vec2(2.0, 1.0)).expected.kind, OrbitClass::bounded_nonconvergent);
  EXPECT_EQ(predict_orbit(b, db, vec2(1.0, 0.0)).expected.kind, OrbitClass::convergent);
}

TEST(ScalarSequence, QuarterTurnHasThreeClusterPoints) {
  const auto v = scalar_re_sequence(I, 1.0, 2000);
  EXPECT_FALSE(v.convergent);
  ASSERT_EQ(v.cluster_points.size(), 3u);
  EXPECT_NEAR(v.cluster_points[0], -1.0, 1e-12);
  EXPECT_NEAR(v.cluster_points[1], 0.0, 1e-12);
  EXPECT_NEAR(v.cluster_points[2], 1.0, 1e-12);
  EXPECT_TRUE(v.zero_amplitude_consistent);
}

TEST(ScalarSequence, IrrationalAngleFillsTheInterval) {
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * std::sqrt(2.0));
  const int n_max = 100000;
  const auto v = scalar_re_sequence(w, 1.0, n_max);
  EXPECT_FALSE(v.convergent);
  const auto values = scalar_re_values(w, 1.0, n_max);
  const std::span<const double> tail(values);
  const auto coarse = leader_clusters(tail.subspan(values.size() / 2), 1e-2);
  EXPECT_GE(coarse.size(), 20u);
}

TEST(ScalarSequence, ZeroAmplitudeConverges) {
  const auto v = scalar_re_sequence(std::polar(1.0, 1.0), 0.0, 2000);
  EXPECT_TRUE(v.convergent);
  EXPECT_EQ(v.limit, 0.0);
}

TEST(ScalarSequence, RejectsExcludedW) {
  EXPECT_THROW(scalar_re_sequence(1.0, 1.0, 2000), Error);
  EXPECT_THROW(scalar_re_sequence(-1.0, 1.0, 2000), Error);
  EXPECT_THROW(scalar_re_sequence(1.1 * I, 1.0, 2000), Error);
  EXPECT_THROW(scalar_re_sequence(I, 1.0, 10), Error);
}

}  // namespace
}  // namespace aolab
