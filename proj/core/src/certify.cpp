#include "cdual/certify.hpp"

#include <cmath>
#include <cstdio>

#include "cdual/error.hpp"
#include "cdual/sampling.hpp"

namespace cdual {
namespace {

double eig_tol(const Matrix& m) { return 1e-10 * (1.0 + m.inf_norm()); }

struct Extreme {
  double value;
  std::size_t index;
  double tol;
};

// Scans the samples for the smallest lambda_min(H + rho I), or, with
// `concavity`, the largest lambda_max(H). Ties keep the lowest index.
Extreme scan(const SmoothFunction& problem, const std::vector<Vector>& pts, double rho,
             bool concavity) {
  Extreme best{0.0, pts.size(), 0.0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Matrix m = problem.hessian(pts[i]).shifted(rho);
    const double v = concavity ? max_eig_sym(m) : min_eig_sym(m);
    const bool better = best.index == pts.size() || (concavity ? v > best.value : v < best.value);
    if (better) best = Extreme{v, i, eig_tol(m)};
  }
  return best;
}

Verdict classify(double margin, double tol, CertificateMode mode, bool exact) {
  const Verdict pass = exact ? Verdict::kCertifiedExact : Verdict::kCertifiedSampled;
  if (mode == CertificateMode::kRelaxed) return margin >= -tol ? pass : Verdict::kRefuted;
  if (margin > kMarginFloor) return pass;
  if (margin < -tol) return Verdict::kRefuted;
  return Verdict::kInconclusive;
}

CertificateResult run_check(const SmoothFunction& problem, double rho, const BallSampling& sampling,
                            CertificateMode mode, bool concavity) {
  sampling.validate();
  if (!std::isfinite(rho)) throw InvalidInput("certificate multiplier is not finite");
  const std::size_t n = problem.dimension();

  std::vector<Vector> pts;
  bool exact = problem.has_constant_hessian();
  if (exact) {
    pts.push_back(Vector(n, 0.0));
  } else {
    pts = sampling.points(n);
  }
  const Extreme ex = scan(problem, pts, rho, concavity);

  CertificateResult r;
  r.extreme_eigenvalue = ex.value;
  r.witness = pts[ex.index];
  r.margin = concavity ? -ex.value : ex.value;
  r.samples_evaluated = pts.size();
  r.verdict = classify(r.margin, ex.tol, mode, exact);
  if (exact) {
    r.exactness_reason = mode == CertificateMode::kRelaxed
                             ? "constant Hessian (degree <= 2); semidefinite test"
                             : "constant Hessian (degree <= 2)";
  } else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "sampled ball of radius %g", sampling.radius);
    r.exactness_reason = buf;
  }
  return r;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kCertifiedExact:
      return "certified_exact";
    case Verdict::kCertifiedSampled:
      return "certified_sampled";
    case Verdict::kRefuted:
      return "refuted";
    case Verdict::kInconclusive:
      return "inconclusive";
  }
  return "unknown";
}

const char* to_string(CertificateMode m) {
  return m == CertificateMode::kStrict ? "strict" : "relaxed";
}

BallSampling BallSampling::relaxed_default() {
  BallSampling s;
  s.radius = 1.0 + 1.0 / 16.0;
  return s;
}

std::size_t BallSampling::samples_for(std::size_t n) const {
  return sample_count != 0 ? sample_count : 4096 * n;
}

void BallSampling::validate() const {
  if (!(radius >= 1.0) || !std::isfinite(radius)) {
    throw InvalidInput("sampling radius must be finite and at least 1");
  }
}

std::vector<Vector> BallSampling::points(std::size_t n) const {
  std::vector<Vector> pts = ball_points(n, samples_for(n), radius, seed);
  if (include_boundary) {
    for (auto s : sphere_points(n, MultistartConfig{}.starts_for(n), seed)) {
      for (double& c : s) c *= radius;
      pts.push_back(std::move(s));
    }
  }
  pts.push_back(Vector(n, 0.0));
  return pts;
}

CertificateResult check_convexification(const SmoothFunction& problem, double rho,
                                        const BallSampling& sampling, CertificateMode mode) {
  return run_check(problem, rho, sampling, mode, false);
}

CertificateResult check_strict_concavity(const SmoothFunction& problem,
                                         const BallSampling& sampling) {
  return run_check(problem, 0.0, sampling, CertificateMode::kStrict, true);
}

Theorem31Result theorem31_verdict(const SmoothFunction& problem, const StationarySet& set,
                                  const BallSampling& sampling, CertificateMode mode) {
  if (set.empty()) throw InvalidInput("theorem31_verdict: stationary set is empty");
  Theorem31Result r;
  r.mode = mode;
  const RhoGroup& top = set.largest_group();
  r.rho = top.rho;
  r.certificate = check_convexification(problem, r.rho, sampling, mode);
  if (r.certificate.certified()) {
    r.designated_group = set.largest_index;
    r.designated_value = problem.value(set.pairs[top.members.front()].x);
  }
  return r;
}

QueryResult certify_query(const SmoothFunction& problem, const CertificateQuery& query,
                          const BallSampling& sampling, const StationarySet* set) {
  if (query.x_bar.size() != problem.dimension()) throw InvalidInput("query: dimension mismatch");
  if (std::abs(dot(query.x_bar, query.x_bar) - 1.0) > 1e-8) {
    throw InvalidInput("query: x_bar is not a unit vector");
  }
  if (!(query.rho_bar >= 0.0)) throw InvalidInput("query: rho_bar must be non-negative");
  const Vector r = axpy(query.rho_bar, query.x_bar, problem.gradient(query.x_bar));
  if (inf_norm(r) > 1e-8) throw InvalidInput("query: grad P(x_bar) + rho_bar x_bar is not zero");

  QueryResult out;
  out.certificate = check_convexification(problem, query.rho_bar, sampling, query.mode);
  out.value = problem.value(query.x_bar);
  if (set != nullptr && out.certificate.certified()) {
    for (std::size_t g = 0; g < set->groups.size(); ++g) {
      if (std::abs(set->groups[g].rho - query.rho_bar) <= 1e-6) out.designated_group = g;
    }
  }
  return out;
}

}  // namespace cdual
