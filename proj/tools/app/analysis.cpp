#include "app/analysis.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "app/problem_file.hpp"

namespace cdual::app {
namespace {

using ojson = nlohmann::ordered_json;

ojson real(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson real(const std::optional<double>& v) { return v ? real(*v) : ojson(nullptr); }

ojson vec(const Vector& v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(real(x));
  return a;
}

ojson certificate_json(const CertificateResult& c, const char* eigen_key) {
  ojson j;
  j["verdict"] = to_string(c.verdict);
  j[eigen_key] = real(c.extreme_eigenvalue);
  j["witness"] = vec(c.witness);
  j["margin"] = real(c.margin);
  j["exactness_reason"] = c.exactness_reason;
  j["samples"] = c.samples_evaluated;
  return j;
}

ojson pair_json(const StationaryPair& p, const SmoothFunction& f) {
  ojson j;
  j["x"] = vec(p.x);
  j["rho"] = real(p.rho);
  j["residual"] = real(p.residual_inf_norm);
  j["value"] = real(f.value(p.x));
  return j;
}

std::string vec_text(const Vector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_real(v[i]);
  }
  return s + ")";
}

std::string opt_text(const std::optional<double>& v) { return v ? format_real(*v) : "n/a"; }

void dump(const ojson& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      out += nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) {
          out += ",";
          out += nl;
        }
        first = false;
        out += pad;
        out += ojson(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        dump(it.value(), out, indent, depth + 1);
      }
      out += nl;
      out += close_pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[";
      out += nl;
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) {
          out += ",";
          out += nl;
        }
        out += pad;
        dump(j[i], out, indent, depth + 1);
      }
      out += nl;
      out += close_pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_real(v) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

MultistartConfig AnalysisOptions::multistart() const {
  MultistartConfig cfg;
  cfg.seed = seed;
  cfg.start_count = starts;
  return cfg;
}

BallSampling AnalysisOptions::certificate_sampling() const {
  BallSampling s = relaxed ? BallSampling::relaxed_default() : BallSampling{};
  if (radius) s.radius = *radius;
  s.seed = seed;
  return s;
}

BallSampling AnalysisOptions::concavity_sampling() const {
  BallSampling s;
  s.seed = seed;
  return s;
}

bool Analysis::theorem32_refuted() const {
  return theorem32 && theorem32->all_hold && comparison && comparison->refutation.has_value();
}

Analysis run_analysis(const PolynomialFunction& problem, const AnalysisOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  Analysis a{problem, options, {}, {}, {}, {}, {}, {}, {}, 0.0};
  a.concavity = check_strict_concavity(problem, options.concavity_sampling());
  a.stationary = multistart_solve(problem, options.multistart());
  for (const auto& p : a.stationary.pairs) a.dual.push_back(evaluate_dual(problem, p.x, p.rho));
  if (!a.stationary.empty()) {
    a.theorem32 = theorem32_hypotheses(problem, a.stationary);
    a.theorem31 = theorem31_verdict(problem, a.stationary, options.certificate_sampling(),
                                    options.relaxed ? CertificateMode::kRelaxed
                                                    : CertificateMode::kStrict);
  }
  if (problem.dimension() <= 3) {
    GridSpec grid;
    grid.points_per_axis = options.grid;
    a.oracle = global_min_grid(problem, grid);
    if (!a.stationary.empty()) {
      a.comparison = compare_candidates(problem, a.stationary, *a.oracle, options.value_tol);
    }
  }
  a.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return a;
}

nlohmann::ordered_json report_json(const Analysis& a) {
  const auto& f = a.problem;
  ojson r;
  r["problem"] = problem_to_json(f);
  r["concavity"] = certificate_json(a.concavity, "max_eigenvalue");

  ojson st;
  st["pairs"] = ojson::array();
  for (const auto& p : a.stationary.pairs) st["pairs"].push_back(pair_json(p, f));
  st["groups"] = ojson::array();
  for (const auto& g : a.stationary.groups) {
    ojson gj;
    gj["rho"] = real(g.rho);
    gj["members"] = g.members;
    st["groups"].push_back(std::move(gj));
  }
  st["largest_group"] = a.stationary.empty() ? ojson(nullptr) : ojson(a.stationary.largest_index);
  st["nonpositive_rho_pairs"] = ojson::array();
  for (const auto& p : a.stationary.nonpositive_rho_pairs) {
    st["nonpositive_rho_pairs"].push_back(pair_json(p, f));
  }
  r["stationary"] = std::move(st);

  r["dual"] = ojson::array();
  for (std::size_t i = 0; i < a.dual.size(); ++i) {
    const auto& d = a.dual[i];
    ojson dj;
    dj["pair"] = i;
    dj["rho"] = real(d.rho);
    dj["value"] = real(d.value);
    dj["first_derivative"] = real(d.first_derivative);
    dj["second_derivative"] = real(d.second_derivative);
    dj["det_shifted_hessian"] = real(d.det_shifted_hessian);
    dj["curvature_positive"] = d.curvature_positive;
    r["dual"].push_back(std::move(dj));
  }

  if (a.theorem31) {
    const auto& t = *a.theorem31;
    ojson tj = certificate_json(t.certificate, "min_eigenvalue");
    tj["mode"] = to_string(t.mode);
    tj["rho"] = real(t.rho);
    tj["designated_group"] = t.designated_group ? ojson(*t.designated_group) : ojson(nullptr);
    tj["designated_value"] = real(t.designated_value);
    r["theorem31"] = std::move(tj);
  } else {
    r["theorem31"] = nullptr;
  }

  if (a.theorem32) {
    ojson tj;
    tj["pairs"] = ojson::array();
    for (const auto& h : a.theorem32->pairs) {
      ojson hj;
      hj["pair"] = h.pair_index;
      hj["rho"] = real(h.rho);
      hj["det_shifted_hessian"] = real(h.det_shifted_hessian);
      hj["det_nonzero"] = h.det_nonzero;
      hj["curvature"] = real(h.curvature);
      hj["curvature_positive"] = h.curvature_positive;
      hj["inverse_quadratic_form"] = real(h.inverse_quadratic_form);
      tj["pairs"].push_back(std::move(hj));
    }
    tj["hypotheses_hold"] = a.theorem32->all_hold;
    tj["designee_group"] = a.stationary.largest_index;
    tj["refuted"] = a.theorem32_refuted();
    r["theorem32"] = std::move(tj);
  } else {
    r["theorem32"] = nullptr;
  }

  if (a.oracle) {
    ojson oj;
    oj["argmin"] = vec(a.oracle->argmin);
    oj["min_value"] = real(a.oracle->min_value);
    oj["grid_resolution"] = real(a.oracle->grid_resolution);
    oj["evaluations"] = a.oracle->evaluations;
    if (a.comparison) {
      const auto& c = *a.comparison;
      ojson cj;
      cj["pair_values"] = vec(c.pair_values);
      cj["best_pair"] = c.best_pair;
      cj["best_value"] = real(c.best_value);
      cj["designee_pair"] = c.designee_pair;
      cj["designee_value"] = real(c.designee_value);
      cj["value_tol"] = real(a.options.value_tol);
      cj["designee_matches_oracle"] = c.designee_matches_oracle;
      oj["comparison"] = std::move(cj);
    } else {
      oj["comparison"] = nullptr;
    }
    r["oracle"] = std::move(oj);
  } else {
    r["oracle"] = nullptr;
  }

  if (a.comparison && a.comparison->refutation) {
    const auto& ref = *a.comparison->refutation;
    ojson rj;
    rj["designee_group"] = ref.designee_group;
    rj["designee_pair"] = ref.designee_pair;
    rj["designee_x"] = vec(ref.designee_x);
    rj["designee_value"] = real(ref.designee_value);
    rj["oracle_argmin"] = vec(ref.oracle_argmin);
    rj["oracle_value"] = real(ref.oracle_value);
    rj["gap"] = real(ref.gap);
    rj["theorem32_hypotheses_hold"] = a.theorem32 && a.theorem32->all_hold;
    r["refutation"] = std::move(rj);
  } else {
    r["refutation"] = nullptr;
  }

  const auto& o = a.options;
  const std::size_t n = f.dimension();
  ojson m;
  m["seed"] = o.seed;
  m["starts"] = o.multistart().starts_for(n);
  m["grid_points_per_axis"] = n <= 3 ? ojson(GridSpec{o.grid}.points_for(n)) : ojson(nullptr);
  m["certificate_radius"] = real(o.certificate_sampling().radius);
  m["certificate_samples"] = o.certificate_sampling().samples_for(n);
  m["mode"] = o.relaxed ? "relaxed" : "strict";
  m["value_tol"] = real(o.value_tol);
  r["meta"] = std::move(m);
  return r;
}

void write_report_text(const Analysis& a, std::ostream& out) {
  const auto& f = a.problem;
  out << "problem: dimension " << f.dimension() << ", " << f.terms().size() << " terms\n";
  for (const auto& t : f.terms()) {
    out << "  " << format_real(t.coeff) << " * x^(";
    for (std::size_t i = 0; i < t.powers.size(); ++i) out << (i ? "," : "") << t.powers[i];
    out << ")\n";
  }

  const auto& c = a.concavity;
  out << "\nstrict concavity on the unit ball: " << to_string(c.verdict) << "\n"
      << "  max eigenvalue of Hessian = " << format_real(c.extreme_eigenvalue) << " at "
      << vec_text(c.witness) << "\n"
      << "  margin = " << format_real(c.margin) << " (" << c.exactness_reason << ", "
      << c.samples_evaluated << " samples)\n";

  out << "\nstationary pairs (rho > 0): " << a.stationary.pairs.size() << "\n";
  for (std::size_t i = 0; i < a.stationary.pairs.size(); ++i) {
    const auto& p = a.stationary.pairs[i];
    out << "  [" << i << "] x = " << vec_text(p.x) << "  rho = " << format_real(p.rho)
        << "  P = " << format_real(f.value(p.x)) << "  residual = "
        << format_real(p.residual_inf_norm) << "\n";
  }
  for (std::size_t g = 0; g < a.stationary.groups.size(); ++g) {
    const auto& grp = a.stationary.groups[g];
    out << "  group " << g << ": rho = " << format_real(grp.rho) << ", pairs";
    for (auto m : grp.members) out << " " << m;
    out << (g == a.stationary.largest_index ? "  (largest)\n" : "\n");
  }
  for (const auto& p : a.stationary.nonpositive_rho_pairs) {
    out << "  excluded (rho <= 0): x = " << vec_text(p.x) << "  rho = " << format_real(p.rho)
        << "  P = " << format_real(f.value(p.x)) << "  residual = "
        << format_real(p.residual_inf_norm) << "\n";
  }

  out << "\ndual function at each pair:\n";
  for (std::size_t i = 0; i < a.dual.size(); ++i) {
    const auto& d = a.dual[i];
    out << "  [" << i << "] rho = " << format_real(d.rho) << "  P_d = " << format_real(d.value)
        << "  P_d' = " << format_real(d.first_derivative)
        << "  P_d'' = " << opt_text(d.second_derivative)
        << "  det[H + rho I] = " << format_real(d.det_shifted_hessian) << "\n";
  }

  if (a.theorem32) {
    out << "\ndeterminant / dual-curvature hypotheses:\n";
    for (const auto& h : a.theorem32->pairs) {
      out << "  [" << h.pair_index << "] rho = " << format_real(h.rho)
          << "  det = " << format_real(h.det_shifted_hessian)
          << (h.det_nonzero ? " (nonzero)" : " (singular)")
          << "  P_d'' = " << opt_text(h.curvature)
          << "  x^T[H + rho I]^-1 x = " << opt_text(h.inverse_quadratic_form)
          << (h.holds() ? "  holds\n" : "  fails\n");
    }
    out << "  all hypotheses hold: " << (a.theorem32->all_hold ? "yes" : "no") << "\n"
        << "  designee group: " << a.stationary.largest_index << "\n";
  }

  if (a.theorem31) {
    const auto& t = *a.theorem31;
    out << "\nconvexification certificate (" << to_string(t.mode) << ") at rho = "
        << format_real(t.rho) << ": " << to_string(t.certificate.verdict) << "\n"
        << "  min eigenvalue of H + rho I = " << format_real(t.certificate.extreme_eigenvalue)
        << " at " << vec_text(t.certificate.witness) << "\n"
        << "  margin = " << format_real(t.certificate.margin) << " ("
        << t.certificate.exactness_reason << ", " << t.certificate.samples_evaluated
        << " samples)\n";
    if (t.designated_group) {
      out << "  designated global minimizer: group " << *t.designated_group
          << ", P = " << format_real(*t.designated_value) << "\n";
    }
  }

  if (a.oracle) {
    out << "\ngrid oracle: min P = " << format_real(a.oracle->min_value) << " at "
        << vec_text(a.oracle->argmin) << "  (resolution " << format_real(a.oracle->grid_resolution)
        << ", " << a.oracle->evaluations << " evaluations)\n";
    if (a.comparison) {
      const auto& cmp = *a.comparison;
      out << "  pair values:";
      for (double v : cmp.pair_values) out << " " << format_real(v);
      out << "\n  best pair " << cmp.best_pair << " (P = " << format_real(cmp.best_value)
          << "), designee pair " << cmp.designee_pair
          << " (P = " << format_real(cmp.designee_value) << "), value tolerance "
          << format_real(a.options.value_tol) << "\n"
          << "  designee matches oracle: " << (cmp.designee_matches_oracle ? "yes" : "no")
          << "\n";
    }
  }

  if (a.comparison && a.comparison->refutation) {
    const auto& ref = *a.comparison->refutation;
    out << "\nrefutation record: designee group " << ref.designee_group << ", pair "
        << ref.designee_pair << " x = " << vec_text(ref.designee_x)
        << " has P = " << format_real(ref.designee_value) << "; oracle finds "
        << format_real(ref.oracle_value) << " at " << vec_text(ref.oracle_argmin)
        << "; gap = " << format_real(ref.gap) << "\n"
        << "  largest-multiplier criterion refuted: "
        << (a.theorem32_refuted() ? "yes (all hypotheses hold)" : "no (hypotheses fail)") << "\n";
  }

  const auto& o = a.options;
  const std::size_t n = f.dimension();
  out << "\nseed " << o.seed << ", starts " << o.multistart().starts_for(n);
  if (n <= 3) out << ", grid " << GridSpec{o.grid}.points_for(n);
  out << ", certificate radius " << format_real(o.certificate_sampling().radius) << " ("
      << o.certificate_sampling().samples_for(n) << " samples), mode "
      << (o.relaxed ? "relaxed" : "strict") << "\n";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", a.elapsed_seconds);
  out << "elapsed " << buf << " s\n";
}

std::string dump_json(const nlohmann::ordered_json& doc, int indent) {
  std::string out;
  dump(doc, out, indent, 0);
  return out;
}

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace cdual::app
