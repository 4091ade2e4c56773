#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "cdual/certify.hpp"
#include "cdual/dual.hpp"
#include "cdual/oracle.hpp"
#include "cdual/polynomial.hpp"
#include "cdual/stationary.hpp"
#include "json.hpp"

namespace cdual::app {

struct AnalysisOptions {
  std::uint64_t seed = 0;
  std::size_t starts = 0;          ///< 0: multistart default
  std::size_t grid = 0;            ///< 0: oracle default for the dimension
  std::optional<double> radius;    ///< sampling radius for the convexification check
  bool relaxed = false;
  double value_tol = kDefaultValueTol;

  MultistartConfig multistart() const;
  BallSampling certificate_sampling() const;
  BallSampling concavity_sampling() const;
};

/// Every intermediate of the full pipeline; numbers are reproducible from
/// the options alone.
struct Analysis {
  PolynomialFunction problem;
  AnalysisOptions options;
  CertificateResult concavity;
  StationarySet stationary;
  std::vector<DualEvaluation> dual;
  std::optional<Theorem32Report> theorem32;
  std::optional<Theorem31Result> theorem31;
  std::optional<OracleResult> oracle;
  std::optional<ComparisonReport> comparison;
  double elapsed_seconds = 0.0;

  /// Hypotheses hold for every pair and the designee misses the oracle.
  bool theorem32_refuted() const;
};

/// Runs concavity check, multistart, dual analysis, hypothesis check,
/// convexification certificate and (n <= 3) the grid oracle.
/// SuspectedContinuum and NumericalFailure propagate.
Analysis run_analysis(const PolynomialFunction& problem, const AnalysisOptions& options);

/// Report with keys problem, concavity, stationary, dual, theorem31,
/// theorem32, oracle, refutation, meta. Contains no timing.
nlohmann::ordered_json report_json(const Analysis& a);

void write_report_text(const Analysis& a, std::ostream& out);

/// Serializes with every floating-point value at 17 significant digits;
/// non-finite values become null.
std::string dump_json(const nlohmann::ordered_json& doc, int indent = 2);

/// %.17g
std::string format_real(double v);

}  // namespace cdual::app
