#include "cdual/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "cdual/error.hpp"
#include "cdual/sampling.hpp"

namespace cdual {
namespace {

constexpr int kPolishSteps = 2;

Matrix bordered_jacobian(const SmoothFunction& problem, std::span<const double> x, double rho) {
  const std::size_t n = x.size();
  const Matrix h = problem.hessian(x);
  Matrix j(n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) j(r, c) = h(r, c);
    j(r, r) += rho;
    j(r, n) = x[r];
    j(n, r) = x[r];
  }
  return j;
}

bool lex_less(const StationaryPair& a, const StationaryPair& b) {
  if (a.rho != b.rho) return a.rho < b.rho;
  return a.x < b.x;
}

bool same_root(const StationaryPair& a, const StationaryPair& b, double tol) {
  if (std::abs(a.rho - b.rho) > tol) return false;
  for (std::size_t i = 0; i < a.x.size(); ++i)
    if (std::abs(a.x[i] - b.x[i]) > tol) return false;
  return true;
}

std::vector<StationaryPair> dedup(std::vector<StationaryPair> found, double tol) {
  std::sort(found.begin(), found.end(), lex_less);
  std::vector<StationaryPair> kept;
  for (auto& p : found) {
    const bool dup = std::any_of(kept.begin(), kept.end(),
                                 [&](const StationaryPair& k) { return same_root(k, p, tol); });
    if (!dup) kept.push_back(std::move(p));
  }
  return kept;
}

}  // namespace

double KktResidual::inf_norm() const {
  return std::max(cdual::inf_norm(grad_part), std::abs(sphere_part));
}

const RhoGroup& StationarySet::largest_group() const {
  if (groups.empty()) throw InvalidInput("stationary set is empty");
  return groups[largest_index];
}

std::size_t MultistartConfig::starts_for(std::size_t n) const {
  if (n == 1) return 2;
  return start_count != 0 ? start_count : std::max<std::size_t>(64, 32 * n);
}

void MultistartConfig::validate() const {
  if (!(newton_tol > 0.0) || !(dedup_tol > 0.0) || !(tie_tol > 0.0) ||
      !(rho_positivity_floor > 0.0)) {
    throw InvalidInput("multistart tolerances must be positive");
  }
  if (max_newton_iters < 1) throw InvalidInput("max_newton_iters must be positive");
  if (max_roots < 1) throw InvalidInput("max_roots must be positive");
}

KktResidual kkt_residual(const SmoothFunction& problem, std::span<const double> x, double rho) {
  KktResidual r{problem.gradient(x), dot(x, x) - 1.0};
  for (std::size_t i = 0; i < x.size(); ++i) r.grad_part[i] += rho * x[i];
  return r;
}

double rho_from_x(const SmoothFunction& problem, std::span<const double> x, double sphere_tol) {
  if (x.size() != problem.dimension()) throw InvalidInput("rho_from_x: dimension mismatch");
  if (std::abs(dot(x, x) - 1.0) > sphere_tol) throw InvalidInput("rho_from_x: x is not a unit vector");
  return -dot(x, problem.gradient(x));
}

StationaryPair newton_refine(const SmoothFunction& problem, std::span<const double> x0, double rho0,
                             const MultistartConfig& cfg) {
  const std::size_t n = problem.dimension();
  if (x0.size() != n) throw InvalidInput("newton_refine: dimension mismatch");
  Vector x(x0.begin(), x0.end());
  double rho = rho0;
  if (!std::isfinite(rho)) throw InvalidInput("newton_refine: rho0 is not finite");
  for (double v : x)
    if (!std::isfinite(v)) throw InvalidInput("newton_refine: x0 is not finite");

  auto newton_step = [&](const KktResidual& r) -> std::optional<std::pair<Vector, double>> {
    Vector rhs(n + 1);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -r.grad_part[i];
    rhs[n] = -0.5 * r.sphere_part;
    const LuFactorization lu(bordered_jacobian(problem, x, rho));
    const auto step = lu.solve(rhs);
    if (!step) return std::nullopt;
    Vector nx = x;
    for (std::size_t i = 0; i < n; ++i) nx[i] += (*step)[i];
    return std::pair{std::move(nx), rho + (*step)[n]};
  };

  for (int iter = 0;; ++iter) {
    KktResidual r = kkt_residual(problem, x, rho);
    double res = r.inf_norm();
    if (!std::isfinite(res)) {
      throw NumericalFailure(FailureKind::kDiverged, "newton_refine: non-finite iterate");
    }
    if (res <= cfg.newton_tol) {
      // Polish past tolerance while the residual keeps shrinking.
      for (int polish = 0; polish < kPolishSteps && res > 0.0; ++polish) {
        auto next = newton_step(r);
        if (!next) break;
        KktResidual nr = kkt_residual(problem, next->first, next->second);
        const double nres = nr.inf_norm();
        if (!(nres < res)) break;
        x = std::move(next->first);
        rho = next->second;
        r = std::move(nr);
        res = nres;
      }
      return StationaryPair{std::move(x), rho, res};
    }
    if (iter == cfg.max_newton_iters) {
      throw NumericalFailure(FailureKind::kDiverged,
                             "newton_refine: no convergence in " +
                                 std::to_string(cfg.max_newton_iters) + " iterations");
    }
    auto next = newton_step(r);
    if (!next) throw NumericalFailure(FailureKind::kSingular, "newton_refine: singular Jacobian");
    x = std::move(next->first);
    rho = next->second;
  }
}

StationarySet multistart_solve(const SmoothFunction& problem, const MultistartConfig& cfg) {
  cfg.validate();
  const std::size_t n = problem.dimension();
  const auto starts = sphere_points(n, cfg.starts_for(n), cfg.seed);

  std::vector<StationaryPair> converged;
  for (const auto& s : starts) {
    const double rho0 = std::max(rho_from_x(problem, s), 0.1);
    try {
      converged.push_back(newton_refine(problem, s, rho0, cfg));
    } catch (const NumericalFailure&) {
      // Starts that fail to converge contribute nothing.
    }
  }

  std::vector<StationaryPair> positive;
  StationarySet set;
  for (auto& p : dedup(std::move(converged), cfg.dedup_tol)) {
    if (p.rho > cfg.rho_positivity_floor) {
      positive.push_back(std::move(p));
    } else {
      set.nonpositive_rho_pairs.push_back(std::move(p));
    }
  }

  if (positive.size() > cfg.max_roots) {
    throw SuspectedContinuum("found " + std::to_string(positive.size()) +
                                 " distinct stationary pairs (limit " +
                                 std::to_string(cfg.max_roots) + "); suspected continuum",
                             positive.size());
  }
  for (const auto& p : positive) {
    if (LuFactorization(bordered_jacobian(problem, p.x, p.rho)).singular()) {
      throw SuspectedContinuum(
          "stationary pair at rho = " + std::to_string(p.rho) +
              " is not isolated (singular bordered Jacobian); suspected continuum",
          positive.size());
    }
  }

  set.pairs = std::move(positive);
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    if (set.groups.empty() || set.pairs[i].rho - set.groups.back().rho > cfg.tie_tol) {
      set.groups.push_back(RhoGroup{set.pairs[i].rho, {}});
    }
    set.groups.back().members.push_back(i);
  }
  set.largest_index = set.groups.empty() ? 0 : set.groups.size() - 1;
  return set;
}

}  // namespace cdual
