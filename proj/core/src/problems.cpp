#include "cdual/problems.hpp"

#include <random>

namespace cdual::problems {
namespace {

void enumerate_exponents(std::size_t n, std::uint32_t budget, Exponents& cur, std::size_t var,
                         std::vector<Exponents>& out) {
  if (var == n) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t p = 0; p <= budget; ++p) {
    cur[var] = p;
    enumerate_exponents(n, budget - p, cur, var + 1, out);
  }
  cur[var] = 0;
}

}  // namespace

PolynomialFunction quartic_counterexample() {
  return PolynomialFunction(1, {{-1.0, {4}}, {-1.6, {3}}, {-1.2, {2}}, {2.4, {1}}});
}

PolynomialFunction shifted_parabola() { return PolynomialFunction(1, {{-1.0, {2}}, {-1.0, {1}}}); }

PolynomialFunction anisotropic_quadratic() {
  return PolynomialFunction(2, {{-1.0, {2, 0}}, {-2.0, {0, 2}}});
}

PolynomialFunction isotropic_quadratic(std::size_t n) {
  std::vector<Monomial> terms;
  for (std::size_t i = 0; i < n; ++i) {
    Exponents p(n, 0);
    p[i] = 2;
    terms.push_back({-1.0, std::move(p)});
  }
  return PolynomialFunction(n, std::move(terms));
}

PolynomialFunction random_polynomial(std::uint64_t seed, std::size_t n, std::uint32_t degree) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::vector<Exponents> exps;
  Exponents cur(n, 0);
  enumerate_exponents(n, degree, cur, 0, exps);
  std::vector<Monomial> terms;
  for (auto& e : exps) terms.push_back({coeff(rng), std::move(e)});
  return PolynomialFunction(n, std::move(terms));
}

PolynomialFunction random_concave_quadratic(std::uint64_t seed, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Matrix l(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) l(i, j) = uni(rng);
  Vector b(n);
  for (double& v : b) v = uni(rng);

  std::vector<Monomial> terms;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      double a = 0.0;
      for (std::size_t k = 0; k < n; ++k) a += l(i, k) * l(j, k);
      if (i == j) a += 0.1;
      Exponents p(n, 0);
      ++p[i];
      ++p[j];
      // -1/2 x^T A x: diagonal contributes -a/2 x_i^2, off-diagonal -a x_i x_j.
      terms.push_back({i == j ? -0.5 * a : -a, std::move(p)});
    }
    Exponents p(n, 0);
    p[i] = 1;
    terms.push_back({b[i], std::move(p)});
  }
  return PolynomialFunction(n, std::move(terms));
}

}  // namespace cdual::problems
