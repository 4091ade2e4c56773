#pragma once

#include <cstddef>
#include <cstdint>

#include "cdual/polynomial.hpp"

namespace cdual::problems {

/// P(x) = -x^4 - (8/5) x^3 - (6/5) x^2 + (12/5) x on R. Strictly concave,
/// stationary pairs (-1, 4) and (1, 44/5), global minimum P(-1) = -3 on
/// [-1, 1] while the largest multiplier sits at x = 1 with P(1) = -7/5.
PolynomialFunction quartic_counterexample();

/// P(x) = -x^2 - x on R.
PolynomialFunction shifted_parabola();

/// P(x) = -x1^2 - 2 x2^2.
PolynomialFunction anisotropic_quadratic();

/// P(x) = -x^T x in dimension n; every unit vector is stationary.
PolynomialFunction isotropic_quadratic(std::size_t n);

/// Dense random polynomial: every monomial of total degree <= degree with
/// coefficients uniform in [-1, 1].
PolynomialFunction random_polynomial(std::uint64_t seed, std::size_t n, std::uint32_t degree);

/// P(x) = -1/2 x^T A x + b^T x with A = L L^T + 0.1 I, entries of L and b
/// uniform in [-1, 1].
PolynomialFunction random_concave_quadratic(std::uint64_t seed, std::size_t n);

}  // namespace cdual::problems
