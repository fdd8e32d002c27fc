#include "splitstep/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "splitstep/checks.hpp"
#include "splitstep/errors.hpp"
#include "splitstep/harness.hpp"

namespace splitstep::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::string rule = "trapezoid";
  std::vector<int> iterations{2, 3, 4, 5, 6};
  std::vector<int> partitions{1, 10, 100};
  double h = 1e-3;
  double lambda1 = 0.25;
  double lambda2 = 0.5;
  double t_end = 1.0;
  std::string reference;
  std::optional<double> floor;
  std::string format = "csv";
  std::string out_path;
  std::string plot_path;

  // schroedinger
  double energy = 0.5;
  int l = 0;
  double r0 = 1.0;
  double r_end = 6.0;
  int osc_iterations = 4;
  int osc_partitions = 100;
  std::string osc_rule = "bode";

  std::string check_which = "all";
};

QuadRule parse_rule(const std::string& name) {
  auto rule = QuadRule::parse(name);
  if (!rule) throw UsageError("unknown rule '" + name + "' (expected trapezoid, simpson or bode)");
  return *rule;
}

std::string fmt(double x, int precision = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*e", precision, x);
  return buf;
}

// Writes to --out when given, else to `out`.
void deliver(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + path + "'");
  file << text;
}

StudyConfig study_from(const CliConfig& cfg) {
  StudyConfig study;
  study.problem = DahlquistParams{cfg.lambda1, cfg.lambda2, cfg.t_end};
  study.iterations = cfg.iterations;
  study.partitions = cfg.partitions;
  study.rule = parse_rule(cfg.rule);
  study.h = cfg.h;
  study.floor = cfg.floor;
  if (!cfg.reference.empty()) {
    if (cfg.reference == "exact") study.reference = ReferenceKind::ExactFormula;
    else if (cfg.reference == "expm") study.reference = ReferenceKind::ExpmFlow;
    else if (cfg.reference == "fine") study.reference = ReferenceKind::FineSolve;
    else throw UsageError("unknown reference '" + cfg.reference + "'");
  }
  if (cfg.format != "csv" && cfg.format != "table") {
    throw UsageError("unknown format '" + cfg.format + "' (expected csv or table)");
  }
  return study;
}

int cmd_study(const CliConfig& cfg, std::ostream& out) {
  const StudyConfig study = study_from(cfg);
  const ConvergenceReport report = run_study(study);
  deliver(cfg.format == "table" ? emit_table(report) : emit_csv(report), cfg.out_path, out);
  if (!cfg.plot_path.empty()) {
    deliver(emit_order_plot_data(std::span<const ConvergenceReport>(&report, 1)), cfg.plot_path, out);
  }
  return kOk;
}

int cmd_schroedinger(const CliConfig& cfg, std::ostream& out) {
  OscillatorSpec spec;
  spec.energy = cfg.energy;
  spec.l = cfg.l;
  spec.r0 = cfg.r0;
  spec.r_end = cfg.r_end;
  if (spec.l < 0) throw UsageError("l must be non-negative");
  if (!(spec.r0 > 0.0)) throw UsageError("r0 must be positive (got " + fmt(spec.r0, 3) + ")");
  const QuadRule rule = parse_rule(cfg.osc_rule);
  const SplitProblem problem = radial_oscillator(spec);
  const auto trajectory =
      iterative_split_trajectory(problem, cfg.osc_partitions, cfg.osc_iterations, rule, cfg.h);

  std::ostringstream text;
  text << "r,q,p,H\n";
  const double h0 = oscillator_energy(spec, spec.r0, problem.u0);
  double drift = 0.0;
  for (const auto& point : trajectory) {
    const double energy = oscillator_energy(spec, point.t, point.state);
    drift = std::max(drift, std::abs(energy - h0));
    text << fmt(point.t, 10) << ',' << fmt(point.state[0], 12) << ',' << fmt(point.state[1], 12) << ','
         << fmt(energy, 12) << '\n';
  }
  text << "# l=" << spec.l << " E=" << fmt(spec.energy, 3) << " rule=" << rule.name()
       << " iterations=" << cfg.osc_iterations << " partitions=" << cfg.osc_partitions << '\n';
  const Vector& final_state = trajectory.back().state;
  if (spec.has_constant_spring() && spec.spring(spec.r0) > 0.0) {
    const auto err = max_abs_err(final_state, oscillator_exact(spec, spec.r_end));
    text << "# error_vs_analytic=" << fmt(std::max(err[0], err[1])) << '\n';
    text << "# energy_drift=" << fmt(drift) << '\n';
  } else {
    const Vector fine = iterative_split_solve(problem, cfg.osc_partitions * 16, cfg.osc_iterations + 2,
                                              QuadRule::bode(), cfg.h / 16.0);
    const auto err = max_abs_err(final_state, fine);
    text << "# error_vs_fine_solve=" << fmt(std::max(err[0], err[1])) << '\n';
  }
  deliver(text.str(), cfg.out_path, out);
  return kOk;
}

int cmd_check(const CliConfig& cfg, std::ostream& out) {
  const std::string& which = cfg.check_which;
  if (which != "phi" && which != "semigroup" && which != "laplace" && which != "all") {
    throw UsageError("unknown check '" + which + "' (expected phi, semigroup, laplace or all)");
  }
  std::vector<CheckResult> results;
  if (which == "phi" || which == "all") results.push_back(check_phi_recurrence());
  if (which == "semigroup" || which == "all") results.push_back(check_block_semigroup());
  if (which == "laplace" || which == "all") {
    for (auto& r : check_laplace()) results.push_back(std::move(r));
  }
  bool ok = true;
  std::ostringstream text;
  for (const auto& r : results) {
    ok = ok && r.passed;
    text << (r.passed ? "PASS " : "FAIL ") << r.name << ": max residual " << fmt(r.max_residual, 3)
         << " (tolerance " << fmt(r.tolerance, 1) << ") " << r.detail << '\n';
  }
  deliver(text.str(), cfg.out_path, out);
  return ok ? kOk : kToleranceFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterative operator splitting: convergence tables, oscillator runs and property checks",
               "splitstep"};
  // Plain --help only: -h would collide with the --h spacing option.
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  CliConfig cfg;

  auto* table = app.add_subcommand("table", "Error table for the 2x2 exchange problem");
  table->add_option("--rule", cfg.rule, "trapezoid | simpson | bode")->required();
  table->add_option("--format", cfg.format, "csv | table");
  table->add_option("--out", cfg.out_path, "Output file (default stdout)");
  table->add_option("--plot-data", cfg.plot_path, "Also write tab-separated plot data here");

  auto* converge = app.add_subcommand("converge", "Configurable convergence study");
  converge->add_option("--rule", cfg.rule, "trapezoid | simpson | bode");
  converge->add_option("--iterations", cfg.iterations, "Comma-separated iteration counts")->delimiter(',');
  converge->add_option("--partitions", cfg.partitions, "Comma-separated partition counts")->delimiter(',');
  converge->add_option("--h", cfg.h, "Intra-step quadrature spacing");
  converge->add_option("--lambda1", cfg.lambda1);
  converge->add_option("--lambda2", cfg.lambda2);
  converge->add_option("--T", cfg.t_end, "Final time");
  converge->add_option("--reference", cfg.reference, "exact | expm | fine");
  converge->add_option("--floor", cfg.floor, "Error floor for order fits");
  converge->add_option("--format", cfg.format, "csv | table");
  converge->add_option("--out", cfg.out_path, "Output file (default stdout)");
  converge->add_option("--plot-data", cfg.plot_path, "Also write tab-separated plot data here");

  auto* schroedinger = app.add_subcommand("schroedinger", "Radial Schroedinger equation as an oscillator");
  schroedinger->add_option("--E", cfg.energy, "Energy");
  schroedinger->add_option("--l", cfg.l, "Angular quantum number");
  schroedinger->add_option("--r0", cfg.r0, "Start of the radial interval");
  schroedinger->add_option("--R", cfg.r_end, "End of the radial interval");
  schroedinger->add_option("--iterations", cfg.osc_iterations);
  schroedinger->add_option("--partitions", cfg.osc_partitions);
  schroedinger->add_option("--rule", cfg.osc_rule, "trapezoid | simpson | bode");
  schroedinger->add_option("--h", cfg.h, "Intra-step quadrature spacing");
  schroedinger->add_option("--out", cfg.out_path, "Output file (default stdout)");

  auto* check = app.add_subcommand("check", "Run a property suite");
  check->add_option("which", cfg.check_which, "phi | semigroup | laplace | all");
  check->add_option("--out", cfg.out_path, "Output file (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*table) {
      CliConfig defaults;
      defaults.rule = cfg.rule;
      defaults.format = cfg.format;
      defaults.out_path = cfg.out_path;
      defaults.plot_path = cfg.plot_path;
      return cmd_study(defaults, out);
    }
    if (*converge) return cmd_study(cfg, out);
    if (*schroedinger) return cmd_schroedinger(cfg, out);
    if (*check) return cmd_check(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const GridIncompatible& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const SingularPotential& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kToleranceFailure;
  }
  return kUsageError;
}

}  // namespace splitstep::cli
