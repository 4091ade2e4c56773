#include "cdual/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cdual/error.hpp"

namespace cdual {
namespace {

std::vector<Monomial> canonicalize(std::vector<Monomial> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Monomial& a, const Monomial& b) { return a.powers < b.powers; });
  std::vector<Monomial> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().powers == t.powers) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Monomial& m) { return m.coeff == 0.0; });
  return out;
}

std::vector<Monomial> partial(const std::vector<Monomial>& terms, std::size_t var) {
  std::vector<Monomial> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    const auto p = t.powers[var];
    if (p == 0) continue;
    Monomial d{t.coeff * static_cast<double>(p), t.powers};
    d.powers[var] = p - 1;
    out.push_back(std::move(d));
  }
  return canonicalize(std::move(out));
}

double ipow(double base, std::uint32_t e) {
  double r = 1.0;
  while (e != 0) {
    if (e & 1u) r *= base;
    base *= base;
    e >>= 1u;
  }
  return r;
}

double evaluate_terms(const std::vector<Monomial>& terms, std::span<const double> x) {
  double sum = 0.0;
  for (const auto& t : terms) {
    double prod = t.coeff;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (t.powers[j] != 0) prod *= ipow(x[j], t.powers[j]);
    sum += prod;
  }
  return sum;
}

}  // namespace

void SmoothFunction::check_dimension(std::span<const double> x) const {
  if (x.size() != dimension()) {
    throw InvalidInput("point has length " + std::to_string(x.size()) +
                       ", function dimension is " + std::to_string(dimension()));
  }
}

PolynomialFunction::PolynomialFunction(std::size_t dimension, std::vector<Monomial> terms)
    : dimension_(dimension) {
  if (dimension == 0) throw InvalidInput("polynomial dimension must be positive");
  for (const auto& t : terms) {
    if (t.powers.size() != dimension) {
      throw InvalidInput("monomial has " + std::to_string(t.powers.size()) +
                         " exponents, polynomial dimension is " + std::to_string(dimension));
    }
    if (!std::isfinite(t.coeff)) throw InvalidInput("monomial coefficient is not finite");
  }
  terms_ = canonicalize(std::move(terms));

  first_partials_.reserve(dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) first_partials_.push_back(partial(terms_, i));
  second_partials_.reserve(dimension_ * (dimension_ + 1) / 2);
  for (std::size_t i = 0; i < dimension_; ++i)
    for (std::size_t j = i; j < dimension_; ++j)
      second_partials_.push_back(partial(first_partials_[i], j));
}

PolynomialFunction PolynomialFunction::zero(std::size_t dimension) {
  return PolynomialFunction(dimension, {});
}

PolynomialFunction PolynomialFunction::constant(std::size_t dimension, double c) {
  return PolynomialFunction(dimension, {Monomial{c, Exponents(dimension, 0)}});
}

std::uint32_t PolynomialFunction::degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& t : terms_) {
    std::uint32_t td = 0;
    for (auto p : t.powers) td += p;
    d = std::max(d, td);
  }
  return d;
}

double PolynomialFunction::value(std::span<const double> x) const {
  check_dimension(x);
  return evaluate_terms(terms_, x);
}

Vector PolynomialFunction::gradient(std::span<const double> x) const {
  check_dimension(x);
  Vector g(dimension_);
  for (std::size_t i = 0; i < dimension_; ++i) g[i] = evaluate_terms(first_partials_[i], x);
  return g;
}

Matrix PolynomialFunction::hessian(std::span<const double> x) const {
  check_dimension(x);
  Matrix h(dimension_);
  std::size_t k = 0;
  for (std::size_t i = 0; i < dimension_; ++i) {
    for (std::size_t j = i; j < dimension_; ++j, ++k) {
      const double v = evaluate_terms(second_partials_[k], x);
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

PolynomialFunction PolynomialFunction::differentiate(std::size_t var) const {
  if (var >= dimension_) {
    throw InvalidInput("variable index " + std::to_string(var) + " out of range for dimension " +
                       std::to_string(dimension_));
  }
  return PolynomialFunction(dimension_, first_partials_[var]);
}

PolynomialFunction PolynomialFunction::operator+(const PolynomialFunction& other) const {
  if (other.dimension_ != dimension_) throw InvalidInput("polynomial sum: dimension mismatch");
  std::vector<Monomial> all = terms_;
  all.insert(all.end(), other.terms_.begin(), other.terms_.end());
  return PolynomialFunction(dimension_, std::move(all));
}

PolynomialFunction PolynomialFunction::operator*(double scale) const {
  std::vector<Monomial> scaled = terms_;
  for (auto& t : scaled) t.coeff *= scale;
  return PolynomialFunction(dimension_, std::move(scaled));
}

bool PolynomialFunction::operator==(const PolynomialFunction& other) const {
  return dimension_ == other.dimension_ && terms_ == other.terms_;
}

double eval(const PolynomialFunction& f, std::span<const double> x) { return f.value(x); }

PolynomialFunction differentiate(const PolynomialFunction& f, std::size_t var) {
  return f.differentiate(var);
}

Vector gradient(const SmoothFunction& f, std::span<const double> x) { return f.gradient(x); }

Matrix hessian(const SmoothFunction& f, std::span<const double> x) { return f.hessian(x); }

CallbackFunction::CallbackFunction(std::size_t dimension, ValueFn value, GradientFn gradient,
                                   HessianFn hessian)
    : dimension_(dimension),
      value_(std::move(value)),
      gradient_(std::move(gradient)),
      hessian_(std::move(hessian)) {
  if (dimension == 0) throw InvalidInput("callback dimension must be positive");
  if (!value_ || !gradient_ || !hessian_) throw InvalidInput("callback function missing");
}

double CallbackFunction::value(std::span<const double> x) const {
  check_dimension(x);
  return value_(x);
}

Vector CallbackFunction::gradient(std::span<const double> x) const {
  check_dimension(x);
  Vector g = gradient_(x);
  if (g.size() != dimension_) throw InvalidInput("gradient callback returned wrong length");
  return g;
}

Matrix CallbackFunction::hessian(std::span<const double> x) const {
  check_dimension(x);
  Matrix h = hessian_(x);
  if (h.size() != dimension_) throw InvalidInput("hessian callback returned wrong size");
  for (std::size_t i = 0; i < dimension_; ++i) {
    for (std::size_t j = i + 1; j < dimension_; ++j) {
      const double v = 0.5 * (h(i, j) + h(j, i));
      h(i, j) = v;
      h(j, i) = v;
    }
  }
  return h;
}

Vector fd_gradient(const SmoothFunction& f, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw InvalidInput("finite-difference step must be positive");
  if (x.size() != f.dimension()) throw InvalidInput("fd_gradient: dimension mismatch");
  Vector g(x.size());
  Vector probe(x.begin(), x.end());
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double up = f.value(probe);
    probe[i] = x[i] - h;
    const double down = f.value(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * h);
  }
  return g;
}

Matrix fd_hessian(const SmoothFunction& f, std::span<const double> x, double h) {
  if (!(h > 0.0)) throw InvalidInput("finite-difference step must be positive");
  if (x.size() != f.dimension()) throw InvalidInput("fd_hessian: dimension mismatch");
  const std::size_t n = x.size();
  Matrix hess(n);
  Vector probe(x.begin(), x.end());
  for (std::size_t j = 0; j < n; ++j) {
    probe[j] = x[j] + h;
    const Vector up = f.gradient(probe);
    probe[j] = x[j] - h;
    const Vector down = f.gradient(probe);
    probe[j] = x[j];
    for (std::size_t i = 0; i < n; ++i) hess(i, j) = (up[i] - down[i]) / (2.0 * h);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = 0.5 * (hess(i, j) + hess(j, i));
      hess(i, j) = v;
      hess(j, i) = v;
    }
  }
  return hess;
}

}  // namespace cdual
