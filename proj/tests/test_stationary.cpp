#include <gtest/gtest.h>

#include <cmath>

#include "cdual/error.hpp"
#include "cdual/problems.hpp"
#include "cdual/stationary.hpp"
#include "oracles.hpp"

using namespace cdual;

namespace {

void expect_valid_set(const SmoothFunction& p, const StationarySet& set,
                      const MultistartConfig& cfg) {
  for (const auto& pair : set.pairs) {
    const KktResidual r = kkt_residual(p, pair.x, pair.rho);
    EXPECT_LE(r.inf_norm(), cfg.newton_tol);
    EXPECT_LE(std::abs(dot(pair.x, pair.x) - 1.0), cfg.newton_tol);
    EXPECT_GT(pair.rho, cfg.rho_positivity_floor);
  }
  for (std::size_t g = 1; g < set.groups.size(); ++g) {
    EXPECT_LT(set.groups[g - 1].rho, set.groups[g].rho);
  }
  for (const auto& g : set.groups)
    for (auto m : g.members) EXPECT_LE(std::abs(set.pairs[m].rho - g.rho), cfg.tie_tol);
  if (!set.empty()) EXPECT_EQ(set.largest_index, set.groups.size() - 1);
}

}  // namespace

TEST(Kkt, QuarticPairs) {
  const auto p = problems::quartic_counterexample();
  auto r = kkt_residual(p, Vector{-1.0}, 4.0);
  EXPECT_NEAR(r.grad_part[0], 0.0, 1e-14);
  EXPECT_EQ(r.sphere_part, 0.0);
  r = kkt_residual(p, Vector{1.0}, 44.0 / 5.0);
  EXPECT_NEAR(r.grad_part[0], 0.0, 1e-14);
  EXPECT_EQ(r.sphere_part, 0.0);
  EXPECT_EQ(kkt_residual(p, Vector{0.0}, 1.0).sphere_part, -1.0);
  EXPECT_THROW(kkt_residual(p, Vector{0.0, 0.0}, 1.0), InvalidInput);
}

TEST(RhoFromX, Examples) {
  const auto p = problems::quartic_counterexample();
  EXPECT_NEAR(rho_from_x(p, Vector{-1.0}), 4.0, 1e-14);
  EXPECT_NEAR(rho_from_x(p, Vector{1.0}), 44.0 / 5.0, 1e-14);
  // -x * P'(x) at x = 1, with P' from the closed form -2x - 1.
  EXPECT_NEAR(rho_from_x(problems::shifted_parabola(), Vector{1.0}), -1.0 * (-2.0 - 1.0), 1e-15);
  EXPECT_THROW(rho_from_x(p, Vector{0.5}), InvalidInput);
}

TEST(Newton, ConvergesFromNearbyStarts) {
  const auto p = problems::quartic_counterexample();
  const MultistartConfig cfg;
  auto a = newton_refine(p, Vector{-0.9}, 3.0, cfg);
  EXPECT_NEAR(a.x[0], -1.0, 1e-10);
  EXPECT_NEAR(a.rho, 4.0, 1e-10);
  EXPECT_LE(kkt_residual(p, a.x, a.rho).inf_norm(), 1e-10);
  auto b = newton_refine(p, Vector{0.8}, 8.0, cfg);
  EXPECT_NEAR(b.x[0], 1.0, 1e-10);
  EXPECT_NEAR(b.rho, 44.0 / 5.0, 1e-10);
  EXPECT_LE(kkt_residual(p, b.x, b.rho).inf_norm(), 1e-10);
}

TEST(Newton, ExactRootIsFixedPoint) {
  const auto p = problems::anisotropic_quadratic();
  const auto r = newton_refine(p, Vector{0.0, 1.0}, 4.0, MultistartConfig{});
  EXPECT_EQ(r.x, (Vector{0.0, 1.0}));
  EXPECT_EQ(r.rho, 4.0);
  EXPECT_EQ(r.residual_inf_norm, 0.0);
}

TEST(Newton, FailurePaths) {
  const auto p = problems::quartic_counterexample();
  MultistartConfig cfg;
  cfg.max_newton_iters = 1;
  try {
    newton_refine(p, Vector{0.3}, 0.5, cfg);
    FAIL() << "expected divergence";
  } catch (const NumericalFailure& e) {
    EXPECT_EQ(e.kind(), FailureKind::kDiverged);
  }
  // Bordered Jacobian [[0, 0], [0, 0]] at the origin with rho = 2.
  try {
    newton_refine(problems::isotropic_quadratic(1), Vector{0.0}, 2.0, MultistartConfig{});
    FAIL() << "expected singular Jacobian";
  } catch (const NumericalFailure& e) {
    EXPECT_EQ(e.kind(), FailureKind::kSingular);
  }
  EXPECT_THROW(newton_refine(p, Vector{NAN}, 1.0, MultistartConfig{}), InvalidInput);
}

TEST(Multistart, QuarticHasTwoPairs) {
  const auto p = problems::quartic_counterexample();
  const MultistartConfig cfg;
  const auto set = multistart_solve(p, cfg);
  ASSERT_EQ(set.pairs.size(), 2u);
  EXPECT_NEAR(set.pairs[0].x[0], -1.0, 1e-8);
  EXPECT_NEAR(set.pairs[0].rho, 4.0, 1e-8);
  EXPECT_NEAR(set.pairs[1].x[0], 1.0, 1e-8);
  EXPECT_NEAR(set.pairs[1].rho, 44.0 / 5.0, 1e-8);
  ASSERT_EQ(set.groups.size(), 2u);
  EXPECT_EQ(set.largest_group().members, std::vector<std::size_t>{1});
  expect_valid_set(p, set, cfg);
}

TEST(Multistart, AnisotropicGroups) {
  const auto p = problems::anisotropic_quadratic();
  const MultistartConfig cfg;
  const auto set = multistart_solve(p, cfg);
  ASSERT_EQ(set.pairs.size(), 4u);
  ASSERT_EQ(set.groups.size(), 2u);
  EXPECT_NEAR(set.groups[0].rho, 2.0, 1e-12);
  EXPECT_NEAR(set.groups[1].rho, 4.0, 1e-12);
  EXPECT_EQ(set.groups[0].members.size(), 2u);
  EXPECT_EQ(set.groups[1].members.size(), 2u);
  // Hand solution: (+-1, 0) at rho 2, (0, +-1) at rho 4.
  for (auto m : set.groups[0].members) {
    EXPECT_NEAR(std::abs(set.pairs[m].x[0]), 1.0, 1e-12);
    EXPECT_NEAR(set.pairs[m].x[1], 0.0, 1e-12);
  }
  for (auto m : set.groups[1].members) {
    EXPECT_NEAR(set.pairs[m].x[0], 0.0, 1e-12);
    EXPECT_NEAR(std::abs(set.pairs[m].x[1]), 1.0, 1e-12);
  }
  expect_valid_set(p, set, cfg);
}

TEST(Multistart, ContinuumIsReported) {
  EXPECT_THROW(multistart_solve(problems::isotropic_quadratic(2)), SuspectedContinuum);
  EXPECT_THROW(multistart_solve(problems::isotropic_quadratic(3)), SuspectedContinuum);
}

TEST(Multistart, MaxRootsLimit) {
  MultistartConfig cfg;
  cfg.max_roots = 3;
  try {
    multistart_solve(problems::anisotropic_quadratic(), cfg);
    FAIL() << "expected suspected continuum";
  } catch (const SuspectedContinuum& e) {
    EXPECT_EQ(e.roots_found(), 4u);
  }
}

TEST(Multistart, NonpositiveRhoPairsKeptAside) {
  // P = x^2 (convex): the only stationary pairs have rho = -2.
  const PolynomialFunction convex(1, {{1.0, {2}}});
  const auto set = multistart_solve(convex);
  EXPECT_TRUE(set.empty());
  ASSERT_EQ(set.nonpositive_rho_pairs.size(), 2u);
  EXPECT_NEAR(set.nonpositive_rho_pairs[0].rho, -2.0, 1e-12);
  EXPECT_THROW(set.largest_group(), InvalidInput);
}

TEST(Multistart, ConfigValidation) {
  MultistartConfig cfg;
  EXPECT_EQ(cfg.starts_for(1), 2u);
  EXPECT_EQ(cfg.starts_for(2), 64u);
  EXPECT_EQ(cfg.starts_for(3), 96u);
  cfg.newton_tol = 0.0;
  EXPECT_THROW(multistart_solve(problems::shifted_parabola(), cfg), InvalidInput);
}

TEST(MultistartProperty, DeterministicAndValid) {
  for (std::uint64_t s = 0; s < 12; ++s) {
    const std::size_t n = 1 + s % 3;
    const auto p = problems::random_polynomial(700 + s, n, 4);
    MultistartConfig cfg;
    cfg.seed = s;
    StationarySet a, b;
    try {
      a = multistart_solve(p, cfg);
      b = multistart_solve(p, cfg);
    } catch (const SuspectedContinuum&) {
      continue;
    }
    ASSERT_EQ(a.pairs.size(), b.pairs.size());
    for (std::size_t i = 0; i < a.pairs.size(); ++i) {
      EXPECT_EQ(a.pairs[i].x, b.pairs[i].x);
      EXPECT_EQ(a.pairs[i].rho, b.pairs[i].rho);
    }
    expect_valid_set(p, a, cfg);
  }
}

TEST(MultistartProperty, EvenProblemsHaveSymmetricRoots) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::size_t n = 2 + s % 2;
    auto full = problems::random_polynomial(800 + s, n, 4);
    std::vector<Monomial> even;
    for (const auto& t : full.terms()) {
      std::uint32_t d = 0;
      for (auto q : t.powers) d += q;
      if (d % 2 == 0) even.push_back(t);
    }
    const PolynomialFunction p(n, even);
    StationarySet set;
    try {
      set = multistart_solve(p);
    } catch (const SuspectedContinuum&) {
      continue;
    }
    for (const auto& a : set.pairs) {
      bool found = false;
      for (const auto& b : set.pairs) {
        double d = std::abs(a.rho - b.rho);
        for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(a.x[i] + b.x[i]));
        found = found || d <= 1e-6;
      }
      EXPECT_TRUE(found) << "seed " << s << " rho " << a.rho;
    }
  }
}
