#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cdual/linalg.hpp"
#include "cdual/polynomial.hpp"
#include "cdual/stationary.hpp"

namespace cdual {

/// Pivot threshold, relative to ||H + rho I||_inf, below which the shifted
/// Hessian is treated as singular.
inline constexpr double kShiftedHessianPivotTol = 1e-12;

/// Canonical dual function and derivatives at one branch point.
struct DualEvaluation {
  double rho = 0.0;
  double value = 0.0;             ///< P_d(rho)
  double first_derivative = 0.0;  ///< P_d'(rho)
  /// P_d''(rho); empty when the shifted Hessian is singular.
  std::optional<double> second_derivative;
  double det_shifted_hessian = 0.0;
  bool curvature_positive = false;
};

/// P(x) + (rho/2) x^T x - rho/2.
double dual_value(const SmoothFunction& problem, std::span<const double> x, double rho);

/// (x^T x - 1) / 2.
double dual_first_derivative(std::span<const double> x);

/// -x^T [H(x) + rho I]^{-1} x. Throws
/// NumericalFailure(kSingularShiftedHessian) when the shift is singular.
double dual_second_derivative(const SmoothFunction& problem, std::span<const double> x,
                              double rho);

/// Solves [H(x) + rho I] y = rhs, throwing on a singular shifted Hessian.
Vector solve_shifted_hessian(const SmoothFunction& problem, std::span<const double> x,
                             double rho, std::span<const double> rhs);

DualEvaluation evaluate_dual(const SmoothFunction& problem, std::span<const double> x,
                             double rho);

struct PairHypotheses {
  std::size_t pair_index = 0;
  double rho = 0.0;
  double det_shifted_hessian = 0.0;
  bool det_nonzero = false;
  /// P_d''(rho_i); empty when the determinant hypothesis fails.
  std::optional<double> curvature;
  bool curvature_positive = false;
  /// x^T [H + rho I]^{-1} x; negative exactly when the curvature is positive.
  std::optional<double> inverse_quadratic_form;
  bool holds() const noexcept { return det_nonzero && curvature_positive; }
};

/// Per-pair check of the determinant and dual-curvature hypotheses.
struct Theorem32Report {
  std::vector<PairHypotheses> pairs;
  bool all_hold = false;
};

Theorem32Report theorem32_hypotheses(const SmoothFunction& problem, const StationarySet& set);

}  // namespace cdual
