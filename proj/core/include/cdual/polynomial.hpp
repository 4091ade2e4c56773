#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cdual/linalg.hpp"

namespace cdual {

using Exponents = std::vector<std::uint32_t>;

struct Monomial {
  double coeff = 0.0;
  Exponents powers;

  bool operator==(const Monomial&) const = default;
};

/// Smooth objective on R^n: value, gradient and Hessian. Implementations are
/// immutable after construction and safe for concurrent use.
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;

  virtual std::size_t dimension() const = 0;
  virtual double value(std::span<const double> x) const = 0;
  virtual Vector gradient(std::span<const double> x) const = 0;
  /// Symmetric n x n; callers may rely on exact symmetry.
  virtual Matrix hessian(std::span<const double> x) const = 0;
  /// True only when the Hessian is known to be independent of x.
  virtual bool has_constant_hessian() const { return false; }

 protected:
  void check_dimension(std::span<const double> x) const;
};

/// Sparse multivariate polynomial in canonical form: terms sorted
/// lexicographically by exponent vector, duplicates merged, zero terms
/// dropped. Two polynomials are equal iff their term lists are equal.
class PolynomialFunction final : public SmoothFunction {
 public:
  PolynomialFunction(std::size_t dimension, std::vector<Monomial> terms);

  static PolynomialFunction zero(std::size_t dimension);
  static PolynomialFunction constant(std::size_t dimension, double c);

  std::size_t dimension() const override { return dimension_; }
  const std::vector<Monomial>& terms() const noexcept { return terms_; }
  /// Total degree; 0 for the zero polynomial.
  std::uint32_t degree() const noexcept;
  bool is_zero() const noexcept { return terms_.empty(); }

  double value(std::span<const double> x) const override;
  Vector gradient(std::span<const double> x) const override;
  Matrix hessian(std::span<const double> x) const override;
  bool has_constant_hessian() const override { return degree() <= 2; }

  /// Exact partial derivative with respect to variable `var`.
  PolynomialFunction differentiate(std::size_t var) const;

  PolynomialFunction operator+(const PolynomialFunction& other) const;
  PolynomialFunction operator*(double scale) const;

  bool operator==(const PolynomialFunction& other) const;

 private:
  std::size_t dimension_;
  std::vector<Monomial> terms_;
  // Canonical term lists of every first and second partial, built once at
  // construction (second partials stored for i <= j only).
  std::vector<std::vector<Monomial>> first_partials_;
  std::vector<std::vector<Monomial>> second_partials_;
};

double eval(const PolynomialFunction& f, std::span<const double> x);
PolynomialFunction differentiate(const PolynomialFunction& f, std::size_t var);
Vector gradient(const SmoothFunction& f, std::span<const double> x);
Matrix hessian(const SmoothFunction& f, std::span<const double> x);

/// Adapts user callbacks to the SmoothFunction contract. The Hessian
/// callback's result is symmetrized on return.
class CallbackFunction final : public SmoothFunction {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradientFn = std::function<Vector(std::span<const double>)>;
  using HessianFn = std::function<Matrix(std::span<const double>)>;

  CallbackFunction(std::size_t dimension, ValueFn value, GradientFn gradient,
                   HessianFn hessian);

  std::size_t dimension() const override { return dimension_; }
  double value(std::span<const double> x) const override;
  Vector gradient(std::span<const double> x) const override;
  Matrix hessian(std::span<const double> x) const override;

 private:
  std::size_t dimension_;
  ValueFn value_;
  GradientFn gradient_;
  HessianFn hessian_;
};

inline constexpr double kDefaultFdStep = 1e-5;

/// Central differences of the value.
Vector fd_gradient(const SmoothFunction& f, std::span<const double> x,
                   double h = kDefaultFdStep);
/// Central differences of the gradient, symmetrized.
Matrix fd_hessian(const SmoothFunction& f, std::span<const double> x,
                  double h = kDefaultFdStep);

}  // namespace cdual
