#pragma once

// Convergence studies over (iterations x partitions) for one quadrature rule.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "splitstep/problems.hpp"
#include "splitstep/quadrature.hpp"
#include "splitstep/splitting.hpp"

namespace splitstep {

struct DahlquistParams {
  double lambda1 = 0.25;
  double lambda2 = 0.5;
  double t_end = 1.0;
};

using ProblemConfig = std::variant<DahlquistParams, OscillatorSpec>;

SplitProblem make_problem(const ProblemConfig& config);

enum class ReferenceKind { ExactFormula, ExpmFlow, FineSolve };

std::string_view to_string(ReferenceKind kind);

/// Default error floor below which cells are left out of order fits.
double default_floor(const QuadRule& rule);

struct StudyConfig {
  ProblemConfig problem = DahlquistParams{};
  std::vector<int> iterations{2, 3, 4, 5, 6};
  std::vector<int> partitions{1, 10, 100};
  QuadRule rule = QuadRule::trapezoid();
  double h = 1e-3;
  /// Unset picks the best available: exact formula, else expm flow, else fine solve.
  std::optional<ReferenceKind> reference;
  std::optional<double> floor;
  /// 0 = SPLITSTEP_THREADS or hardware concurrency.
  unsigned threads = 0;

  double effective_floor() const { return floor.value_or(default_floor(rule)); }
  ReferenceKind effective_reference() const;
  /// Throws GridIncompatible / std::invalid_argument on an unusable config.
  void validate() const;
};

struct ReportRow {
  int iterations = 0;
  int partitions = 0;
  double tau = 0.0;
  /// Per-component absolute error at the final time; empty optional = failed cell.
  std::optional<std::vector<double>> errors;
  std::string failure;

  double max_error() const;
  bool operator==(const ReportRow&) const = default;
};

struct OrderEstimate {
  int iterations = 0;
  std::optional<double> order;
  int points_used = 0;
  bool operator==(const OrderEstimate&) const = default;
};

struct ConvergenceReport {
  QuadRule rule;
  double floor = 0.0;
  double span = 1.0;
  std::size_t dim = 2;
  std::vector<ReportRow> rows;
  std::vector<OrderEstimate> orders;

  const ReportRow* find(int iterations, int partitions) const;
  const OrderEstimate* order_for(int iterations) const;
  bool operator==(const ConvergenceReport&) const = default;
};

ConvergenceReport run_study(const StudyConfig& config);

/// Least-squares slope of log(err) against log(tau) over points with err > floor.
/// Throws InsufficientData when fewer than two points qualify.
double estimate_order(std::span<const std::pair<double, double>> tau_err, double floor);

/// Fills `report.orders` from its rows.
void compute_orders(ConvergenceReport& report);

std::string emit_csv(const ConvergenceReport& report);
ConvergenceReport parse_csv(std::string_view text);
std::string emit_table(const ConvergenceReport& report);
std::string emit_order_plot_data(std::span<const ConvergenceReport> reports);

}  // namespace splitstep
