#include "app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "app/problem_file.hpp"
#include "cdual/branch.hpp"
#include "cdual/error.hpp"
#include "cdual/problems.hpp"
#include "cdual/sampling.hpp"

namespace cdual::app {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Maps library exceptions onto exit codes; anything else escapes.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const SuspectedContinuum& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const NumericalFailure& e) {
    err << "numerical failure (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return kExitNumericalFailure;
  }
}

Assertion close_to(std::string name, double value, double expected, double below, double above) {
  Assertion a{std::move(name), value, expected, expected - below, expected + above, false};
  a.pass = value >= a.lower && value <= a.upper;
  return a;
}

Assertion exact(std::string name, double value, double expected) {
  return close_to(std::move(name), value, expected, 0.0, 0.0);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a(i, j) - b(i, j)));
  return d;
}

double max_abs(const Matrix& a) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a(i, j)));
  return d;
}

}  // namespace

int cmd_analyze(const std::string& path, const AnalysisOptions& options, bool json,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PolynomialFunction problem = load_problem(path);
    const Analysis a = run_analysis(problem, options);
    if (json) {
      out << dump_json(report_json(a)) << "\n";
    } else {
      write_report_text(a, out);
    }
    return kExitOk;
  });
}

std::vector<Assertion> example_assertions(const Analysis& a, std::optional<double> tol) {
  auto t = [&](double fallback) { return tol.value_or(fallback); };
  std::vector<Assertion> out;
  const auto& pairs = a.stationary.pairs;
  out.push_back(exact("stationary pair count", static_cast<double>(pairs.size()), 2.0));
  if (pairs.size() != 2) return out;

  const auto& f = a.problem;
  out.push_back(close_to("x_1", pairs[0].x[0], -1.0, t(1e-8), t(1e-8)));
  out.push_back(close_to("rho_1", pairs[0].rho, 4.0, t(1e-8), t(1e-8)));
  out.push_back(close_to("x_2", pairs[1].x[0], 1.0, t(1e-8), t(1e-8)));
  out.push_back(close_to("rho_2", pairs[1].rho, 44.0 / 5.0, t(1e-8), t(1e-8)));
  out.push_back(close_to("P(x_1)", f.value(pairs[0].x), -3.0, t(1e-12), t(1e-12)));
  out.push_back(close_to("P(x_2)", f.value(pairs[1].x), -7.0 / 5.0, t(1e-12), t(1e-12)));

  const auto& dual = a.dual;
  out.push_back(close_to("det[H + rho I] at pair 1", dual[0].det_shifted_hessian, -4.0 / 5.0,
                         t(1e-8), t(1e-8)));
  out.push_back(close_to("det[H + rho I] at pair 2", dual[1].det_shifted_hessian, -76.0 / 5.0,
                         t(1e-8), t(1e-8)));
  out.push_back(close_to("P_d''(rho_1)", dual[0].second_derivative.value_or(kNaN), 5.0 / 4.0,
                         t(1e-8), t(1e-8)));
  out.push_back(close_to("P_d''(rho_2)", dual[1].second_derivative.value_or(kNaN), 5.0 / 76.0,
                         t(1e-8), t(1e-8)));
  out.push_back(exact("dual-curvature hypotheses hold",
                      a.theorem32 && a.theorem32->all_hold ? 1.0 : 0.0, 1.0));

  if (a.oracle) {
    out.push_back(close_to("oracle min value", a.oracle->min_value, -3.0, t(1e-6), t(1e-6)));
    out.push_back(close_to("oracle argmin", a.oracle->argmin[0], -1.0, t(1e-6), t(1e-6)));
  }
  const bool refuted = a.theorem32_refuted();
  out.push_back(exact("largest-multiplier criterion refuted", refuted ? 1.0 : 0.0, 1.0));
  if (refuted) {
    out.push_back(close_to("refutation gap", a.comparison->refutation->gap, 8.0 / 5.0, t(1e-6),
                           t(1e-6)));
  }

  if (a.theorem31) {
    const auto& c = a.theorem31->certificate;
    out.push_back(exact("convexification certificate refuted",
                        c.verdict == Verdict::kRefuted ? 1.0 : 0.0, 1.0));
    out.push_back(close_to("min eigenvalue of H + rho_2 I", c.extreme_eigenvalue, -76.0 / 5.0,
                           t(1e-6), t(1e-6)));
  }
  out.push_back(close_to("max Hessian eigenvalue on the ball", a.concavity.extreme_eigenvalue,
                         -12.0 / 25.0, t(1e-6), t(1e-3)));
  return out;
}

int cmd_example(const AnalysisOptions& options, std::optional<double> tol, bool json,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (tol && !(*tol >= 0.0)) throw InvalidInput("--tol must be non-negative");
    const Analysis a = run_analysis(problems::quartic_counterexample(), options);
    const auto checks = example_assertions(a, tol);
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const Assertion& c) { return c.pass; });

    if (json) {
      auto doc = report_json(a);
      auto& arr = doc["assertions"] = nlohmann::ordered_json::array();
      for (const auto& c : checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["value"] = c.value;
        j["expected"] = c.expected;
        j["lower"] = c.lower;
        j["upper"] = c.upper;
        j["pass"] = c.pass;
        arr.push_back(std::move(j));
      }
      doc["all_pass"] = ok;
      out << dump_json(doc) << "\n";
    } else {
      write_report_text(a, out);
      out << "\nassertions:\n";
      for (const auto& c : checks) {
        out << "  " << (c.pass ? "PASS" : "FAIL") << "  " << c.name << " = "
            << format_real(c.value) << "  expected " << format_real(c.expected) << " in ["
            << format_real(c.lower) << ", " << format_real(c.upper) << "]\n";
      }
    }
    for (const auto& c : checks) {
      if (!c.pass) {
        err << "assertion failed: " << c.name << " = " << format_real(c.value)
            << ", expected " << format_real(c.expected) << "\n";
      }
    }
    return ok ? kExitOk : kExitNumericalFailure;
  });
}

int cmd_trace(const std::string& path, const AnalysisOptions& options, const TraceOptions& trace,
              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const PolynomialFunction problem = load_problem(path);
    const StationarySet set = multistart_solve(problem, options.multistart());
    if (trace.pair >= set.pairs.size()) {
      throw InvalidInput("pair index " + std::to_string(trace.pair) + " out of range (" +
                         std::to_string(set.pairs.size()) + " pairs found)");
    }
    const StationaryPair& seed = set.pairs[trace.pair];
    BranchTraceConfig cfg = BranchTraceConfig::around(seed.rho);
    if (trace.half_window) {
      if (!(*trace.half_window > 0.0)) throw InvalidInput("--rho-window must be positive");
      cfg.rho_lo = seed.rho - *trace.half_window;
      cfg.rho_hi = seed.rho + *trace.half_window;
    }
    if (trace.step) cfg.step = *trace.step;
    const BranchTrace tr = trace_branch(problem, seed, cfg);

    const std::size_t n = problem.dimension();
    out << "rho";
    for (std::size_t i = 0; i < n; ++i) out << ",x" << i;
    for (std::size_t i = 0; i < n; ++i) out << ",dx" << i;
    out << ",P_d,P_d1,P_d2_analytic,P_d2_fd\n";
    for (std::size_t k = 0; k < tr.points.size(); ++k) {
      const auto& p = tr.points[k];
      out << format_real(p.rho);
      for (double v : p.x) out << "," << format_real(v);
      for (double v : p.tangent) out << "," << format_real(v);
      // P_d'' = x^T x' along the branch.
      const double analytic = dot(p.x, p.tangent);
      const double fd = (k > 0 && k + 1 < tr.points.size())
                            ? fd_dual_second_derivative(problem, tr, p.rho)
                            : kNaN;
      out << "," << format_real(dual_value(problem, p.x, p.rho)) << ","
          << format_real(dual_first_derivative(p.x)) << "," << format_real(analytic) << ","
          << format_real(fd) << "\n";
    }
    if (tr.truncated()) {
      out << "# truncated" << (tr.truncated_low ? " below" : "") << (tr.truncated_high ? " above" : "")
          << ": " << tr.truncation_reason << "\n";
      err << "warning: branch trace truncated: " << tr.truncation_reason << "\n";
    }
    return kExitOk;
  });
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

ValidationReport validate_function(const SmoothFunction& f, const ValidateOptions& options) {
  ValidationReport rep;
  const std::size_t n = f.dimension();

  auto record = [&](std::string name, double error, double bound) {
    rep.checks.push_back({std::move(name), error, bound, error <= bound});
  };

  std::vector<Vector> probes = ball_points(n, options.probe_points, 1.0, options.seed);
  for (auto s : sphere_points(n, std::min<std::size_t>(options.probe_points, 8), options.seed)) {
    probes.push_back(std::move(s));
  }
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const auto& x = probes[k];
    const Vector g = f.gradient(x);
    const Vector fd = fd_gradient(f, x, options.fd_step);
    double gerr = 0.0;
    for (std::size_t i = 0; i < n; ++i) gerr = std::max(gerr, std::abs(g[i] - fd[i]));
    record("gradient vs central differences at probe " + std::to_string(k), gerr,
           options.derivative_tol * (1.0 + inf_norm(g)));

    const Matrix h = f.hessian(x);
    const Matrix fdh = fd_hessian(f, x, options.fd_step);
    record("Hessian vs central differences at probe " + std::to_string(k), max_abs_diff(h, fdh),
           options.derivative_tol * (1.0 + max_abs(h)));
  }

  MultistartConfig ms;
  ms.seed = options.seed;
  ms.start_count = options.starts;
  const StationarySet set = multistart_solve(f, ms);
  for (std::size_t i = 0; i < set.pairs.size(); ++i) {
    const auto& p = set.pairs[i];
    const std::string tag = "pair " + std::to_string(i);
    Vector tangent;
    double analytic = 0.0;
    try {
      tangent = branch_tangent(f, p.x, p.rho);
      analytic = dual_second_derivative(f, p.x, p.rho);
    } catch (const NumericalFailure&) {
      rep.notes.push_back(tag + ": shifted Hessian singular; tangent and curvature checks skipped");
      continue;
    }
    const Vector resid = axpy(1.0, p.x, f.hessian(p.x).shifted(p.rho).multiply(tangent));
    record(tag + ": tangent identity [H + rho I] x' + x = 0", inf_norm(resid),
           options.tangent_tol * (1.0 + inf_norm(p.x)));

    BranchTraceConfig cfg;
    cfg.step = options.branch_step;
    cfg.rho_lo = p.rho - 2.0 * cfg.step;
    cfg.rho_hi = p.rho + 2.0 * cfg.step;
    const BranchTrace tr = trace_branch(f, p, cfg);
    if (tr.seed_index == 0 || tr.seed_index + 1 >= tr.points.size()) {
      rep.notes.push_back(tag + ": branch ends next to the seed; curvature FD check skipped");
      continue;
    }
    const double fd = fd_dual_second_derivative(f, tr, p.rho);
    record(tag + ": P_d'' analytic vs second difference", std::abs(fd - analytic),
           options.curvature_tol * (1.0 + std::abs(analytic)));
  }
  return rep;
}

void write_validation(const ValidationReport& report, std::ostream& out) {
  for (const auto& c : report.checks) {
    out << (c.pass ? "PASS  " : "FAIL  ") << c.name << ": error " << format_real(c.error)
        << " (bound " << format_real(c.bound) << ")\n";
  }
  for (const auto& n : report.notes) out << "note  " << n << "\n";
  out << (report.ok() ? "all checks passed\n" : "validation FAILED\n");
}

int cmd_validate(const std::string& path, const ValidateOptions& options, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const PolynomialFunction problem = load_problem(path);
    return cmd_validate(problem, options, out, err);
  });
}

int cmd_validate(const SmoothFunction& problem, const ValidateOptions& options, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const ValidationReport rep = validate_function(problem, options);
    write_validation(rep, out);
    return rep.ok() ? kExitOk : kExitNumericalFailure;
  });
}

}  // namespace cdual::app
