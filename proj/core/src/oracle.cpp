#include "cdual/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cdual/error.hpp"

namespace cdual {
namespace {

class ArgminTracker {
 public:
  ArgminTracker(const SmoothFunction& f) : f_(f) {}

  void offer(const Vector& x) {
    const double v = f_.value(x);
    ++evaluations_;
    if (!has_ || v < best_ || (v == best_ && x < argmin_)) {
      has_ = true;
      best_ = v;
      argmin_ = x;
    }
  }

  OracleResult result(double resolution) const {
    return OracleResult{argmin_, best_, resolution, evaluations_};
  }

 private:
  const SmoothFunction& f_;
  bool has_ = false;
  double best_ = 0.0;
  Vector argmin_;
  std::size_t evaluations_ = 0;
};

// -1 + 2k/(m-1), written so that grid m and grid 2m-1 agree bit for bit on
// shared nodes.
double node(std::size_t k, std::size_t m) {
  return -1.0 + static_cast<double>(2 * k) / static_cast<double>(m - 1);
}

double turn(std::size_t k, std::size_t count) {
  return 2.0 * std::numbers::pi * (static_cast<double>(k) / static_cast<double>(count));
}

void ball_grid(std::size_t n, std::size_t m, ArgminTracker& tracker) {
  std::vector<std::size_t> idx(n, 0);
  Vector x(n);
  while (true) {
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = node(idx[i], m);
      r2 += x[i] * x[i];
    }
    if (r2 <= 1.0 + 1e-12) tracker.offer(x);

    std::size_t d = n;
    while (d-- > 0) {
      if (++idx[d] < m) break;
      idx[d] = 0;
    }
    if (d == static_cast<std::size_t>(-1)) return;
  }
}

void sphere_grid(std::size_t n, std::size_t m, ArgminTracker& tracker) {
  if (n == 1) {
    tracker.offer({-1.0});
    tracker.offer({1.0});
    return;
  }
  const std::size_t around = 4 * (m - 1);
  if (n == 2) {
    for (std::size_t k = 0; k < around; ++k) {
      const double t = turn(k, around);
      tracker.offer({std::cos(t), std::sin(t)});
    }
    return;
  }
  // n == 3: polar angle in [0, pi] on 2(m-1)+1 nodes, azimuth on 4(m-1).
  const std::size_t polar = 2 * (m - 1);
  for (std::size_t i = 0; i <= polar; ++i) {
    const double theta = 0.5 * turn(i, polar);
    for (std::size_t j = 0; j < around; ++j) {
      const double phi = turn(j, around);
      tracker.offer({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                     std::cos(theta)});
    }
  }
}

}  // namespace

std::size_t GridSpec::points_for(std::size_t n) const {
  if (points_per_axis != 0) return points_per_axis;
  switch (n) {
    case 1:
      return 20001;
    case 2:
      return 1501;
    default:
      return 201;
  }
}

OracleResult global_min_grid(const SmoothFunction& problem, const GridSpec& grid) {
  const std::size_t n = problem.dimension();
  if (n > grid.dimension_limit || n > 3) {
    throw InvalidInput("grid oracle supports dimension <= " +
                       std::to_string(std::min<std::size_t>(grid.dimension_limit, 3)) +
                       " (got " + std::to_string(n) +
                       "); use multistart with the convexification certificate instead");
  }
  const std::size_t m = grid.points_for(n);
  if (m < 3) throw InvalidInput("grid oracle needs at least 3 points per axis");

  ArgminTracker tracker(problem);
  ball_grid(n, m, tracker);
  sphere_grid(n, m, tracker);
  return tracker.result(2.0 / static_cast<double>(m - 1));
}

ComparisonReport compare_candidates(const SmoothFunction& problem, const StationarySet& set,
                                    const OracleResult& oracle, double value_tol) {
  if (set.empty()) throw InvalidInput("compare_candidates: stationary set is empty");
  ComparisonReport rep;
  rep.oracle_value = oracle.min_value;
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    const double v = problem.value(set.pairs[i].x);
    rep.pair_values.push_back(v);
    if (i == 0 || v < rep.best_value) {
      rep.best_value = v;
      rep.best_pair = i;
    }
  }

  rep.designee_group = set.largest_index;
  const auto& members = set.largest_group().members;
  rep.designee_pair = members.front();
  for (std::size_t idx : members)
    if (rep.pair_values[idx] < rep.pair_values[rep.designee_pair]) rep.designee_pair = idx;
  rep.designee_value = rep.pair_values[rep.designee_pair];

  const double gap = rep.designee_value - oracle.min_value;
  rep.designee_matches_oracle = gap <= value_tol;
  if (!rep.designee_matches_oracle) {
    rep.refutation = Refutation{rep.designee_group,  rep.designee_pair,
                                set.pairs[rep.designee_pair].x,
                                rep.designee_value,  oracle.argmin,
                                oracle.min_value,    gap};
  }
  return rep;
}

}  // namespace cdual
