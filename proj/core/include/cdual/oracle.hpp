#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cdual/linalg.hpp"
#include "cdual/polynomial.hpp"
#include "cdual/stationary.hpp"

namespace cdual {

struct GridSpec {
  /// 0 selects 20001 (n = 1), 1501 (n = 2) or 201 (n = 3).
  std::size_t points_per_axis = 0;
  std::size_t dimension_limit = 3;

  std::size_t points_for(std::size_t n) const;
};

struct OracleResult {
  Vector argmin;
  double min_value = 0.0;
  double grid_resolution = 0.0;  ///< axis spacing 2 / (points_per_axis - 1)
  std::size_t evaluations = 0;
};

/// Exhaustive search of P over the axis grid of [-1,1]^n clipped to the unit
/// ball, plus an angular grid of the unit sphere. Ties resolve to the
/// lexicographically smallest point. Refining points_per_axis from m to
/// 2m - 1 yields a superset of both grids.
OracleResult global_min_grid(const SmoothFunction& problem, const GridSpec& grid = {});

inline constexpr double kDefaultValueTol = 1e-3;

struct Refutation {
  std::size_t designee_group = 0;
  std::size_t designee_pair = 0;
  Vector designee_x;
  double designee_value = 0.0;
  Vector oracle_argmin;
  double oracle_value = 0.0;
  double gap = 0.0;  ///< designee_value - oracle_value
};

struct ComparisonReport {
  std::vector<double> pair_values;  ///< P(x_i) per pair
  std::size_t best_pair = 0;
  double best_value = 0.0;
  /// Designee: the member of the largest-rho group with the lowest value.
  std::size_t designee_group = 0;
  std::size_t designee_pair = 0;
  double designee_value = 0.0;
  double oracle_value = 0.0;
  bool designee_matches_oracle = false;
  std::optional<Refutation> refutation;
};

ComparisonReport compare_candidates(const SmoothFunction& problem, const StationarySet& set,
                                    const OracleResult& oracle,
                                    double value_tol = kDefaultValueTol);

}  // namespace cdual
