#include "cdual/dual.hpp"

#include "cdual/error.hpp"

namespace cdual {

double dual_value(const SmoothFunction& problem, std::span<const double> x, double rho) {
  return problem.value(x) + 0.5 * rho * (dot(x, x) - 1.0);
}

double dual_first_derivative(std::span<const double> x) { return 0.5 * (dot(x, x) - 1.0); }

Vector solve_shifted_hessian(const SmoothFunction& problem, std::span<const double> x, double rho,
                             std::span<const double> rhs) {
  const LuFactorization lu(problem.hessian(x).shifted(rho), kShiftedHessianPivotTol);
  auto y = lu.solve(rhs);
  if (!y) {
    throw NumericalFailure(FailureKind::kSingularShiftedHessian,
                           "shifted Hessian H(x) + rho I is singular");
  }
  return std::move(*y);
}

double dual_second_derivative(const SmoothFunction& problem, std::span<const double> x,
                              double rho) {
  const Vector y = solve_shifted_hessian(problem, x, rho, x);
  return -dot(x, y);
}

DualEvaluation evaluate_dual(const SmoothFunction& problem, std::span<const double> x,
                             double rho) {
  DualEvaluation ev;
  ev.rho = rho;
  ev.value = dual_value(problem, x, rho);
  ev.first_derivative = dual_first_derivative(x);
  const LuFactorization lu(problem.hessian(x).shifted(rho), kShiftedHessianPivotTol);
  ev.det_shifted_hessian = lu.determinant();
  if (const auto y = lu.solve(x)) {
    ev.second_derivative = -dot(x, *y);
    ev.curvature_positive = *ev.second_derivative > 0.0;
  }
  return ev;
}

Theorem32Report theorem32_hypotheses(const SmoothFunction& problem, const StationarySet& set) {
  if (set.empty()) throw InvalidInput("theorem32_hypotheses: stationary set is empty");
  Theorem32Report report;
  report.all_hold = true;
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    const auto& pair = set.pairs[i];
    const DualEvaluation ev = evaluate_dual(problem, pair.x, pair.rho);
    PairHypotheses h;
    h.pair_index = i;
    h.rho = pair.rho;
    h.det_shifted_hessian = ev.det_shifted_hessian;
    h.det_nonzero = ev.second_derivative.has_value();
    h.curvature = ev.second_derivative;
    h.curvature_positive = ev.curvature_positive;
    if (ev.second_derivative) h.inverse_quadratic_form = -*ev.second_derivative;
    report.all_hold = report.all_hold && h.holds();
    report.pairs.push_back(std::move(h));
  }
  return report;
}

}  // namespace cdual
