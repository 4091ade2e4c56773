#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "cdual/linalg.hpp"

namespace cdual {

/// Deterministic quasi-uniform points on the unit sphere S^{n-1}.
/// n = 1 always yields {-1, +1}. For n >= 2 the points come from an
/// additive-recurrence (golden-ratio) sequence with a seed-derived shift,
/// mapped through Box-Muller and normalized.
std::vector<Vector> sphere_points(std::size_t n, std::size_t count, std::uint64_t seed);

/// Deterministic quasi-uniform points in the open ball of the given radius.
std::vector<Vector> ball_points(std::size_t n, std::size_t count, double radius,
                                std::uint64_t seed);

}  // namespace cdual
