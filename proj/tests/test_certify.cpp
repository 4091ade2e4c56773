#include <gtest/gtest.h>

#include <cmath>

#include "cdual/certify.hpp"
#include "cdual/error.hpp"
#include "cdual/oracle.hpp"
#include "cdual/problems.hpp"
#include "cdual/sampling.hpp"
#include "oracles.hpp"

using namespace cdual;

TEST(Sampling, PointsInsideBallAndDeterministic) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto a = ball_points(n, 500, 1.0625, 4);
    const auto b = ball_points(n, 500, 1.0625, 4);
    EXPECT_EQ(a, b);
    for (const auto& x : a) EXPECT_LE(norm2(x), 1.0625 + 1e-12);
    for (const auto& x : sphere_points(n, 64, 4)) EXPECT_NEAR(norm2(x), 1.0, 1e-12);
  }
  EXPECT_EQ(sphere_points(1, 2, 9), (std::vector<Vector>{{-1.0}, {1.0}}));
  EXPECT_NE(ball_points(2, 10, 1.0, 1), ball_points(2, 10, 1.0, 2));
}

TEST(BallSamplingConfig, Defaults) {
  BallSampling s;
  EXPECT_EQ(s.samples_for(2), 8192u);
  EXPECT_EQ(BallSampling::relaxed_default().radius, 1.0625);
  // ball + multistart sphere starts + centre
  EXPECT_EQ(s.points(2).size(), 8192u + 64u + 1u);
  s.radius = 0.9;
  EXPECT_THROW(s.validate(), InvalidInput);
}

TEST(Convexification, QuarticRefutedAtUpperPair) {
  const auto p = problems::quartic_counterexample();
  const auto r = check_convexification(p, 44.0 / 5.0, BallSampling{});
  EXPECT_EQ(r.verdict, Verdict::kRefuted);
  ASSERT_EQ(r.witness.size(), 1u);
  EXPECT_NEAR(r.witness[0], 1.0, 1e-12);
  EXPECT_NEAR(r.extreme_eigenvalue, -76.0 / 5.0, 1e-12);
  EXPECT_NEAR(oracle::quartic_d2(r.witness[0]) + 44.0 / 5.0, r.extreme_eigenvalue, 1e-12);
}

TEST(Convexification, ParabolaCertifiedExact) {
  const auto r = check_convexification(problems::shifted_parabola(), 3.0, BallSampling{});
  EXPECT_EQ(r.verdict, Verdict::kCertifiedExact);
  EXPECT_EQ(r.extreme_eigenvalue, 1.0);
  EXPECT_EQ(r.samples_evaluated, 1u);
  EXPECT_NE(r.exactness_reason.find("constant Hessian"), std::string::npos);
}

TEST(Convexification, AnisotropicSemidefinite) {
  const auto p = problems::anisotropic_quadratic();
  const auto relaxed =
      check_convexification(p, 4.0, BallSampling::relaxed_default(), CertificateMode::kRelaxed);
  EXPECT_EQ(relaxed.verdict, Verdict::kCertifiedExact);
  EXPECT_NEAR(relaxed.extreme_eigenvalue, 0.0, 1e-12);
  const auto strict = check_convexification(p, 4.0, BallSampling{});
  EXPECT_EQ(strict.verdict, Verdict::kInconclusive);
  const auto low =
      check_convexification(p, 3.0, BallSampling::relaxed_default(), CertificateMode::kRelaxed);
  EXPECT_EQ(low.verdict, Verdict::kRefuted);
}

TEST(Convexification, SampledVerdictForNonConstantHessian) {
  const auto p = problems::quartic_counterexample();
  // P'' >= -24 on the unit interval, so rho = 30 is positive definite everywhere.
  const auto r = check_convexification(p, 30.0, BallSampling{});
  EXPECT_EQ(r.verdict, Verdict::kCertifiedSampled);
  EXPECT_NEAR(r.extreme_eigenvalue, 6.0, 1e-12);
  EXPECT_NE(r.exactness_reason.find("sampled"), std::string::npos);
  EXPECT_THROW(check_convexification(p, NAN, BallSampling{}), InvalidInput);
}

TEST(Concavity, Examples) {
  const auto q = check_strict_concavity(problems::quartic_counterexample(), BallSampling{});
  EXPECT_EQ(q.verdict, Verdict::kCertifiedSampled);
  EXPECT_GE(q.extreme_eigenvalue, -12.0 / 25.0 - 1e-6);
  EXPECT_LE(q.extreme_eigenvalue, -12.0 / 25.0 + 1e-3);
  EXPECT_NEAR(q.witness[0], -0.4, 1e-2);

  const auto convex = check_strict_concavity(PolynomialFunction(1, {{1.0, {2}}}), BallSampling{});
  EXPECT_EQ(convex.verdict, Verdict::kRefuted);
  EXPECT_EQ(convex.extreme_eigenvalue, 2.0);

  const auto aniso = check_strict_concavity(problems::anisotropic_quadratic(), BallSampling{});
  EXPECT_EQ(aniso.verdict, Verdict::kCertifiedExact);
  EXPECT_EQ(aniso.extreme_eigenvalue, -2.0);
}

TEST(Verdict31, Examples) {
  const auto parabola = problems::shifted_parabola();
  const auto a = theorem31_verdict(parabola, multistart_solve(parabola), BallSampling{});
  EXPECT_EQ(a.certificate.verdict, Verdict::kCertifiedExact);
  EXPECT_NEAR(a.rho, 3.0, 1e-12);
  ASSERT_TRUE(a.designated_value.has_value());
  EXPECT_NEAR(*a.designated_value, -2.0, 1e-12);

  const auto quartic = problems::quartic_counterexample();
  const auto b = theorem31_verdict(quartic, multistart_solve(quartic), BallSampling{});
  EXPECT_EQ(b.certificate.verdict, Verdict::kRefuted);
  EXPECT_NEAR(b.rho, 44.0 / 5.0, 1e-10);
  EXPECT_FALSE(b.designated_group.has_value());

  EXPECT_THROW(theorem31_verdict(quartic, StationarySet{}, BallSampling{}), InvalidInput);
}

TEST(Query, AnisotropicRelaxedRemark) {
  const auto p = problems::anisotropic_quadratic();
  const auto set = multistart_solve(p);
  const auto q = certify_query(p, CertificateQuery{{0.0, 1.0}, 4.0, CertificateMode::kRelaxed},
                               BallSampling::relaxed_default(), &set);
  EXPECT_TRUE(q.certificate.certified());
  EXPECT_NEAR(q.certificate.extreme_eigenvalue, 0.0, 1e-12);
  EXPECT_EQ(q.value, -2.0);
  ASSERT_TRUE(q.designated_group.has_value());
  for (auto m : set.groups[*q.designated_group].members)
    EXPECT_NEAR(std::abs(set.pairs[m].x[1]), 1.0, 1e-12);

  const auto oracle_min = global_min_grid(p);
  EXPECT_NEAR(q.value, oracle_min.min_value, 10 * oracle_min.grid_resolution);
}

TEST(Query, Validation) {
  const auto p = problems::anisotropic_quadratic();
  const auto s = BallSampling::relaxed_default();
  EXPECT_THROW(certify_query(p, {{0.0, 0.9}, 4.0}, s), InvalidInput);
  EXPECT_THROW(certify_query(p, {{0.0, 1.0}, -1.0}, s), InvalidInput);
  EXPECT_THROW(certify_query(p, {{0.0, 1.0}, 3.0}, s), InvalidInput);
  EXPECT_THROW(certify_query(p, {{1.0}, 4.0}, s), InvalidInput);
}

TEST(CertifyProperty, RefutationWitnessReproduces) {
  for (std::uint64_t s = 0; s < 15; ++s) {
    const std::size_t n = 1 + s % 3;
    const auto p = problems::random_polynomial(1200 + s, n, 4);
    BallSampling sampling;
    sampling.sample_count = 256;
    const auto r = check_convexification(p, 0.5, sampling);
    if (r.verdict != Verdict::kRefuted) continue;
    EXPECT_LT(min_eig_sym(p.hessian(r.witness).shifted(0.5)), 0.0);
  }
}

TEST(CertifyProperty, MonotoneInRho) {
  const auto p = problems::random_polynomial(1300, 2, 4);
  BallSampling sampling;
  sampling.sample_count = 512;
  double prev = -INFINITY;
  for (double rho = -5.0; rho <= 5.0; rho += 0.5) {
    const double m = check_convexification(p, rho, sampling).extreme_eigenvalue;
    EXPECT_GE(m, prev);
    prev = m;
  }
}

TEST(CertifyProperty, CertifiedExactMatchesOracle) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto p = problems::random_concave_quadratic(1400 + s, 2);
    StationarySet set;
    try {
      set = multistart_solve(p);
    } catch (const SuspectedContinuum&) {
      continue;
    }
    if (set.empty()) continue;
    const auto v = theorem31_verdict(p, set, BallSampling{});
    if (v.certificate.verdict != Verdict::kCertifiedExact) continue;
    const auto o = global_min_grid(p);
    EXPECT_NEAR(*v.designated_value, o.min_value, kDefaultValueTol) << "seed " << s;
  }
}

TEST(Verdicts, Names) {
  EXPECT_STREQ(to_string(Verdict::kCertifiedExact), "certified_exact");
  EXPECT_STREQ(to_string(Verdict::kCertifiedSampled), "certified_sampled");
  EXPECT_STREQ(to_string(Verdict::kRefuted), "refuted");
  EXPECT_STREQ(to_string(Verdict::kInconclusive), "inconclusive");
  EXPECT_STREQ(to_string(CertificateMode::kRelaxed), "relaxed");
}
