#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "app/analysis.hpp"
#include "cdual/polynomial.hpp"

namespace cdual::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitNumericalFailure = 3;

int cmd_analyze(const std::string& path, const AnalysisOptions& options, bool json,
                std::ostream& out, std::ostream& err);

/// One reproduced quantity of the built-in counterexample.
struct Assertion {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double lower = 0.0;  ///< accepted interval
  double upper = 0.0;
  bool pass = false;
};

/// Checks the counterexample's published values against an analysis of it.
/// `tol` replaces every per-assertion tolerance when set.
std::vector<Assertion> example_assertions(const Analysis& a, std::optional<double> tol);

int cmd_example(const AnalysisOptions& options, std::optional<double> tol, bool json,
                std::ostream& out, std::ostream& err);

struct TraceOptions {
  std::size_t pair = 0;
  std::optional<double> half_window;  ///< window [rho - w, rho + w]
  std::optional<double> step;
};

/// Comma-separated branch table: rho, x_i, dx_i, P_d, P_d', P_d'' (analytic),
/// P_d'' (second difference). Unavailable entries print as nan.
int cmd_trace(const std::string& path, const AnalysisOptions& options, const TraceOptions& trace,
              std::ostream& out, std::ostream& err);

struct ValidationCheck {
  std::string name;
  double error = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  std::vector<std::string> notes;
  bool ok() const;
};

struct ValidateOptions {
  std::uint64_t seed = 0;
  std::size_t starts = 0;
  std::size_t probe_points = 16;
  double fd_step = kDefaultFdStep;
  /// Relative tolerance for gradient/Hessian agreement.
  double derivative_tol = 1e-5;
  double tangent_tol = 1e-9;
  double curvature_tol = 1e-4;
  /// Branch grid step for the P_d'' second difference.
  double branch_step = 1e-4;
};

/// Finite-difference checks of gradient and Hessian at seeded ball points,
/// the branch-tangent identity and analytic-vs-FD P_d'' at every pair.
ValidationReport validate_function(const SmoothFunction& f, const ValidateOptions& options);

void write_validation(const ValidationReport& report, std::ostream& out);

int cmd_validate(const std::string& path, const ValidateOptions& options, std::ostream& out,
                 std::ostream& err);
int cmd_validate(const SmoothFunction& problem, const ValidateOptions& options, std::ostream& out,
                 std::ostream& err);

}  // namespace cdual::app
