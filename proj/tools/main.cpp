#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "app/commands.hpp"

namespace {

void add_analysis_flags(CLI::App* cmd, cdual::app::AnalysisOptions& o) {
  cmd->add_option("--seed", o.seed, "Seed for multistart and ball sampling");
  cmd->add_option("--starts", o.starts, "Multistart start count (0 = max(64, 32n))");
  cmd->add_option("--grid", o.grid, "Oracle grid points per axis (0 = dimension default)");
  cmd->add_option("--radius", o.radius, "Sampling radius for the convexification certificate");
  cmd->add_flag("--relaxed", o.relaxed, "Semidefinite certificate on a ball of radius > 1");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace cdual::app;
  CLI::App app{"Canonical-duality analysis of concave minimization over the unit ball"};
  app.require_subcommand(1);

  AnalysisOptions analysis;
  std::string path;
  bool json = false;
  std::optional<double> tol;

  auto* analyze = app.add_subcommand("analyze", "Run the full pipeline on a problem file");
  analyze->add_option("problem", path, "Problem JSON file")->required();
  add_analysis_flags(analyze, analysis);
  analyze->add_option("--tol", analysis.value_tol, "Value tolerance for the oracle comparison");
  analyze->add_flag("--json", json, "Machine-readable report");

  auto* example = app.add_subcommand("example", "Reproduce the built-in quartic counterexample");
  add_analysis_flags(example, analysis);
  example->add_option("--tol", tol, "Override every assertion tolerance");
  example->add_flag("--json", json, "Machine-readable report");

  TraceOptions trace;
  auto* trace_cmd = app.add_subcommand("trace", "Tabulate the branch through a stationary pair");
  trace_cmd->add_option("problem", path, "Problem JSON file")->required();
  add_analysis_flags(trace_cmd, analysis);
  trace_cmd->add_option("--pair", trace.pair, "Pair index in rho order");
  trace_cmd->add_option("--rho-window", trace.half_window, "Half-width of the rho window");
  trace_cmd->add_option("--step", trace.step, "Grid step in rho");

  ValidateOptions validate;
  auto* validate_cmd = app.add_subcommand("validate", "Finite-difference self-checks");
  validate_cmd->add_option("problem", path, "Problem JSON file")->required();
  validate_cmd->add_option("--seed", validate.seed, "Seed for probes and multistart");
  validate_cmd->add_option("--starts", validate.starts, "Multistart start count");
  validate_cmd->add_option("--tol", validate.derivative_tol,
                           "Relative tolerance for gradient/Hessian checks");
  validate_cmd->add_option("--step", validate.branch_step,
                           "Branch grid step for the P_d'' check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalidInput;
  }

  if (*analyze) return cmd_analyze(path, analysis, json, std::cout, std::cerr);
  if (*example) return cmd_example(analysis, tol, json, std::cout, std::cerr);
  if (*trace_cmd) return cmd_trace(path, analysis, trace, std::cout, std::cerr);
  return cmd_validate(path, validate, std::cout, std::cerr);
}
