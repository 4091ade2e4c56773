#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cdual/linalg.hpp"
#include "cdual/polynomial.hpp"
#include "cdual/stationary.hpp"

namespace cdual {

/// Smallest eigenvalue that counts as "positive definite" for a sampled or
/// exact strict certificate.
inline constexpr double kMarginFloor = 1e-8;

/// Samples of the closed ball of `radius` used to test matrix definiteness
/// pointwise. Boundary points reuse the multistart sphere set.
struct BallSampling {
  double radius = 1.0;
  /// 0 selects the default 4096 n.
  std::size_t sample_count = 0;
  std::uint64_t seed = 0;
  bool include_boundary = true;

  /// Radius 1 + 1/16: an open set containing the unit ball.
  static BallSampling relaxed_default();

  std::size_t samples_for(std::size_t n) const;
  void validate() const;
  /// Interior points first, then boundary points, then the centre.
  std::vector<Vector> points(std::size_t n) const;
};

enum class CertificateMode { kStrict, kRelaxed };

enum class Verdict { kCertifiedExact, kCertifiedSampled, kRefuted, kInconclusive };

const char* to_string(Verdict v);
const char* to_string(CertificateMode m);

struct CertificateResult {
  Verdict verdict = Verdict::kInconclusive;
  /// Minimum of lambda_min(H + rho I) for convexification checks, maximum of
  /// lambda_max(H) for concavity checks.
  double extreme_eigenvalue = 0.0;
  Vector witness;  ///< sample at which the extreme value was attained
  /// Distance of the extreme eigenvalue from zero on the certified side
  /// (negative when that side is violated).
  double margin = 0.0;
  std::string exactness_reason;
  std::size_t samples_evaluated = 0;

  bool certified() const noexcept {
    return verdict == Verdict::kCertifiedExact || verdict == Verdict::kCertifiedSampled;
  }
};

/// Tests H(x) + rho I > 0 (strict) or >= 0 (relaxed) over the sampled ball.
/// Constant-Hessian objectives are decided exactly from a single evaluation.
CertificateResult check_convexification(const SmoothFunction& problem, double rho,
                                        const BallSampling& sampling,
                                        CertificateMode mode = CertificateMode::kStrict);

/// Tests H(x) < 0 over the sampled ball.
CertificateResult check_strict_concavity(const SmoothFunction& problem,
                                         const BallSampling& sampling);

struct Theorem31Result {
  CertificateMode mode = CertificateMode::kStrict;
  double rho = 0.0;  ///< multiplier of the largest rho group
  CertificateResult certificate;
  /// Index into StationarySet::groups of the group proven globally minimal.
  std::optional<std::size_t> designated_group;
  std::optional<double> designated_value;
};

/// Convexification certificate at the largest multiplier. On a certified
/// verdict the largest-rho group is designated as the global minimizer.
Theorem31Result theorem31_verdict(const SmoothFunction& problem, const StationarySet& set,
                                  const BallSampling& sampling,
                                  CertificateMode mode = CertificateMode::kStrict);

/// A user-supplied stationary candidate (x_bar on the sphere, rho_bar >= 0).
struct CertificateQuery {
  Vector x_bar;
  double rho_bar = 0.0;
  CertificateMode mode = CertificateMode::kRelaxed;
};

struct QueryResult {
  CertificateResult certificate;
  double value = 0.0;  ///< P(x_bar)
  /// Group of `set` whose multiplier matches rho_bar, when one was given.
  std::optional<std::size_t> designated_group;
};

/// Certifies a single candidate. Throws InvalidInput when x_bar is not a
/// unit vector, rho_bar < 0, or grad P(x_bar) + rho_bar x_bar != 0 (1e-8).
QueryResult certify_query(const SmoothFunction& problem, const CertificateQuery& query,
                          const BallSampling& sampling, const StationarySet* set = nullptr);

}  // namespace cdual
