#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cdual/linalg.hpp"
#include "cdual/polynomial.hpp"
#include "cdual/stationary.hpp"

namespace cdual {

struct BranchTraceConfig {
  double rho_lo = 0.0;
  double rho_hi = 0.0;
  double step = 0.0;
  double corrector_tol = 1e-11;
  int max_corrector_iters = 25;
  /// Largest seed residual accepted before the seed is polished to
  /// corrector_tol. Multistart pairs satisfy 1e-10.
  double seed_tol = 1e-8;

  /// Window rho (1 -+ 1/16) -+ 1e-3 with step 1e-2 max(1, rho).
  static BranchTraceConfig around(double rho);
  void validate() const;
};

struct BranchPoint {
  double rho = 0.0;
  Vector x;
  Vector tangent;  ///< x'(rho)
  double residual_inf_norm = 0.0;
};

/// Samples of the curve rho -> x(rho) solving grad P(x) + rho x = 0 through
/// the seed pair. Off the seed the points leave the unit sphere.
struct BranchTrace {
  StationaryPair seed;
  std::vector<BranchPoint> points;  ///< ascending rho
  std::size_t seed_index = 0;
  bool truncated_low = false;
  bool truncated_high = false;
  std::string truncation_reason;

  bool truncated() const noexcept { return truncated_low || truncated_high; }
};

/// x'(rho) = -[H(x) + rho I]^{-1} x.
Vector branch_tangent(const SmoothFunction& problem, std::span<const double> x, double rho);

/// RK4 predictor along the tangent field, Newton corrector in x at each grid
/// rho. A direction that meets a singular shifted Hessian or a failed
/// correction stops early and is flagged.
BranchTrace trace_branch(const SmoothFunction& problem, const StationaryPair& pair,
                         const BranchTraceConfig& cfg);

/// Second difference of P_d along the trace at an interior grid point.
double fd_dual_second_derivative(const SmoothFunction& problem, const BranchTrace& trace,
                                 double rho);

}  // namespace cdual
