#pragma once

#include <stdexcept>
#include <string>

namespace cdual {

/// Raised when arguments violate a documented precondition (dimension
/// mismatch, index out of range, off-sphere point, empty set, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class FailureKind {
  kSingular,                ///< singular Newton / KKT Jacobian
  kDiverged,                ///< iteration limit reached or non-finite iterate
  kSingularShiftedHessian,  ///< det[H(x) + rho I] numerically zero
};

const char* to_string(FailureKind kind);

class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(FailureKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  FailureKind kind() const noexcept { return kind_; }

 private:
  FailureKind kind_;
};

/// Multistart found evidence of a non-isolated family of stationary pairs.
class SuspectedContinuum : public std::runtime_error {
 public:
  SuspectedContinuum(const std::string& what, std::size_t roots_found)
      : std::runtime_error(what), roots_found_(roots_found) {}

  std::size_t roots_found() const noexcept { return roots_found_; }

 private:
  std::size_t roots_found_;
};

}  // namespace cdual
