#include "cdual/branch.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "cdual/dual.hpp"
#include "cdual/error.hpp"

namespace cdual {
namespace {

Vector stationarity(const SmoothFunction& problem, std::span<const double> x, double rho) {
  return axpy(rho, x, problem.gradient(x));
}

// Newton in x at fixed rho. Returns nullopt on failure.
std::optional<BranchPoint> correct(const SmoothFunction& problem, Vector x, double rho,
                                   const BranchTraceConfig& cfg) {
  for (int iter = 0;; ++iter) {
    const Vector r = stationarity(problem, x, rho);
    const double res = inf_norm(r);
    if (!std::isfinite(res)) return std::nullopt;
    if (res <= cfg.corrector_tol) {
      try {
        Vector t = branch_tangent(problem, x, rho);
        return BranchPoint{rho, std::move(x), std::move(t), res};
      } catch (const NumericalFailure&) {
        return std::nullopt;
      }
    }
    if (iter == cfg.max_corrector_iters) return std::nullopt;
    const LuFactorization lu(problem.hessian(x).shifted(rho), kShiftedHessianPivotTol);
    const auto dx = lu.solve(r);
    if (!dx) return std::nullopt;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= (*dx)[i];
  }
}

std::optional<Vector> rk4_predict(const SmoothFunction& problem, const BranchPoint& from,
                                  double to_rho) {
  const double h = to_rho - from.rho;
  try {
    const Vector& k1 = from.tangent;
    const Vector k2 = branch_tangent(problem, axpy(0.5 * h, k1, from.x), from.rho + 0.5 * h);
    const Vector k3 = branch_tangent(problem, axpy(0.5 * h, k2, from.x), from.rho + 0.5 * h);
    const Vector k4 = branch_tangent(problem, axpy(h, k3, from.x), to_rho);
    Vector x = from.x;
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return x;
  } catch (const NumericalFailure&) {
    return std::nullopt;
  }
}

// Grid rho values from the seed toward `end`, anchored at seed + k * step,
// with a final partial step landing on `end`.
std::vector<double> grid_toward(double seed, double end, double step) {
  std::vector<double> out;
  const double span = std::abs(end - seed);
  const double dir = end >= seed ? 1.0 : -1.0;
  const auto full = static_cast<std::size_t>(std::floor(span / step + 1e-9));
  for (std::size_t k = 1; k <= full; ++k) out.push_back(seed + dir * static_cast<double>(k) * step);
  const double covered = static_cast<double>(full) * step;
  if (span - covered > 1e-9 * step) out.push_back(end);
  return out;
}

}  // namespace

BranchTraceConfig BranchTraceConfig::around(double rho) {
  BranchTraceConfig cfg;
  cfg.rho_lo = rho * (1.0 - 1.0 / 16.0) - 1e-3;
  cfg.rho_hi = rho * (1.0 + 1.0 / 16.0) + 1e-3;
  cfg.step = 1e-2 * std::max(1.0, rho);
  return cfg;
}

void BranchTraceConfig::validate() const {
  if (!(rho_lo < rho_hi)) throw InvalidInput("branch window requires rho_lo < rho_hi");
  if (!(step > 0.0)) throw InvalidInput("branch step must be positive");
  if (!(corrector_tol > 0.0) || !(seed_tol > 0.0)) {
    throw InvalidInput("branch tolerances must be positive");
  }
  if (max_corrector_iters < 1) throw InvalidInput("max_corrector_iters must be positive");
}

Vector branch_tangent(const SmoothFunction& problem, std::span<const double> x, double rho) {
  Vector minus_x(x.begin(), x.end());
  for (double& v : minus_x) v = -v;
  return solve_shifted_hessian(problem, x, rho, minus_x);
}

BranchTrace trace_branch(const SmoothFunction& problem, const StationaryPair& pair,
                         const BranchTraceConfig& cfg) {
  cfg.validate();
  if (pair.x.size() != problem.dimension()) throw InvalidInput("trace_branch: dimension mismatch");
  if (pair.rho < cfg.rho_lo || pair.rho > cfg.rho_hi) {
    throw InvalidInput("trace_branch: seed rho lies outside [rho_lo, rho_hi]");
  }
  if (inf_norm(stationarity(problem, pair.x, pair.rho)) > cfg.seed_tol) {
    throw InvalidInput("trace_branch: seed is not stationary at its rho");
  }
  // Fails only when the shifted Hessian is singular at the seed.
  branch_tangent(problem, pair.x, pair.rho);
  auto seed_point = correct(problem, pair.x, pair.rho, cfg);
  if (!seed_point) {
    throw NumericalFailure(FailureKind::kDiverged, "trace_branch: seed correction failed");
  }

  BranchTrace trace;
  trace.seed = pair;

  auto walk = [&](double end, bool& truncated) {
    std::vector<BranchPoint> out;
    const BranchPoint* prev = &*seed_point;
    for (double rho : grid_toward(pair.rho, end, cfg.step)) {
      std::optional<BranchPoint> next;
      if (auto predicted = rk4_predict(problem, *prev, rho)) {
        next = correct(problem, std::move(*predicted), rho, cfg);
      }
      if (!next) {
        truncated = true;
        trace.truncation_reason = "shifted Hessian singular or correction failed near rho = " +
                                  std::to_string(rho);
        break;
      }
      out.push_back(std::move(*next));
      prev = &out.back();
    }
    return out;
  };

  std::vector<BranchPoint> below = walk(cfg.rho_lo, trace.truncated_low);
  std::vector<BranchPoint> above = walk(cfg.rho_hi, trace.truncated_high);

  trace.points.reserve(below.size() + 1 + above.size());
  for (auto it = below.rbegin(); it != below.rend(); ++it) trace.points.push_back(std::move(*it));
  trace.seed_index = trace.points.size();
  trace.points.push_back(std::move(*seed_point));
  for (auto& p : above) trace.points.push_back(std::move(p));
  return trace;
}

double fd_dual_second_derivative(const SmoothFunction& problem, const BranchTrace& trace,
                                 double rho) {
  const auto& pts = trace.points;
  const double match_tol = 1e-9 * std::max(1.0, std::abs(rho));
  const auto it = std::find_if(pts.begin(), pts.end(), [&](const BranchPoint& p) {
    return std::abs(p.rho - rho) <= match_tol;
  });
  if (it == pts.end()) throw InvalidInput("fd_dual_second_derivative: rho is not a grid point");
  const auto i = static_cast<std::size_t>(it - pts.begin());
  if (i == 0 || i + 1 == pts.size()) {
    throw InvalidInput("fd_dual_second_derivative: rho needs a grid neighbour on each side");
  }
  const auto& lo = pts[i - 1];
  const auto& mid = pts[i];
  const auto& hi = pts[i + 1];
  const double f_lo = dual_value(problem, lo.x, lo.rho);
  const double f_mid = dual_value(problem, mid.x, mid.rho);
  const double f_hi = dual_value(problem, hi.x, hi.rho);
  const double h_lo = mid.rho - lo.rho;
  const double h_hi = hi.rho - mid.rho;
  return 2.0 * ((f_hi - f_mid) / h_hi - (f_mid - f_lo) / h_lo) / (h_lo + h_hi);
}

}  // namespace cdual
