#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cdual/linalg.hpp"
#include "cdual/polynomial.hpp"

namespace cdual {

/// Residual of grad P(x) + rho x = 0, x^T x = 1.
struct KktResidual {
  Vector grad_part;    ///< grad P(x) + rho x
  double sphere_part;  ///< x^T x - 1

  double inf_norm() const;
};

struct StationaryPair {
  Vector x;
  double rho = 0.0;
  double residual_inf_norm = 0.0;
};

/// Pairs sharing one multiplier value (within tie_tol).
struct RhoGroup {
  double rho = 0.0;  ///< representative: multiplier of the first member
  std::vector<std::size_t> members;
};

/// Stationary pairs with rho > floor, ordered by rho then lexicographically
/// by x. `largest_index` addresses the group with maximal rho.
struct StationarySet {
  std::vector<StationaryPair> pairs;
  std::vector<RhoGroup> groups;
  std::size_t largest_index = 0;
  /// Converged roots with rho at or below the positivity floor.
  std::vector<StationaryPair> nonpositive_rho_pairs;

  bool empty() const noexcept { return pairs.empty(); }
  const RhoGroup& largest_group() const;
};

struct MultistartConfig {
  std::uint64_t seed = 0;
  /// 0 selects the default max(64, 32 n).
  std::size_t start_count = 0;
  double newton_tol = 1e-10;
  int max_newton_iters = 50;
  double dedup_tol = 1e-6;
  double tie_tol = 1e-8;
  double rho_positivity_floor = 1e-9;
  std::size_t max_roots = 64;

  std::size_t starts_for(std::size_t n) const;
  void validate() const;
};

KktResidual kkt_residual(const SmoothFunction& problem, std::span<const double> x, double rho);

/// The only multiplier compatible with stationarity at a unit vector x:
/// rho = -x^T grad P(x). Throws InvalidInput when |x^T x - 1| > sphere_tol.
double rho_from_x(const SmoothFunction& problem, std::span<const double> x,
                  double sphere_tol = 1e-8);

/// Newton on [grad P(x) + rho x; (x^T x - 1)/2] in the n+1 unknowns (x, rho).
/// Throws NumericalFailure(kSingular) on a singular bordered Jacobian and
/// NumericalFailure(kDiverged) when max_newton_iters is exhausted.
StationaryPair newton_refine(const SmoothFunction& problem, std::span<const double> x0,
                             double rho0, const MultistartConfig& cfg);

/// Seeded multistart Newton over quasi-uniform sphere points, deduplicated,
/// sorted and grouped by rho. Throws SuspectedContinuum when more than
/// max_roots distinct roots turn up or when a converged root is not isolated
/// (singular bordered Jacobian).
StationarySet multistart_solve(const SmoothFunction& problem, const MultistartConfig& cfg = {});

}  // namespace cdual
