#pragma once

// Closed Newton-Cotes rules on a uniform node grid.
//
// Composite weights cover whole panels; when the target node falls inside a
// panel, the tail is integrated with the interpolating polynomial through the
// nearest full panel of nodes (shifted left at the end of the grid), so every
// node keeps the rule's order.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace splitstep {

enum class RuleKind { Trapezoid, Simpson, Bode };

class QuadRule {
 public:
  constexpr QuadRule() = default;
  constexpr explicit QuadRule(RuleKind kind) : kind_(kind) {}

  static constexpr QuadRule trapezoid() { return QuadRule(RuleKind::Trapezoid); }
  static constexpr QuadRule simpson() { return QuadRule(RuleKind::Simpson); }
  static constexpr QuadRule bode() { return QuadRule(RuleKind::Bode); }

  /// Accepts "trapezoid", "simpson" (alias "bdf3"), "bode" (alias "boole"), any case.
  static std::optional<QuadRule> parse(std::string_view name);

  constexpr RuleKind kind() const { return kind_; }
  /// Intervals spanned by one panel: 1, 2, 4.
  int panel_width() const;
  /// Order label carried by the rule (2, 3, 4).
  int nominal_order() const;
  /// Panel weights normalised to sum to one.
  std::span<const double> panel_weights() const;
  std::string_view name() const;
  /// Label used in table headers ("Trapezoidal", "BDF3/Simpson", "Bode").
  std::string_view label() const;

  constexpr bool operator==(const QuadRule&) const = default;

 private:
  RuleKind kind_ = RuleKind::Trapezoid;
};

/// Weights w such that  int_{s_0}^{s_m} f  ~  h * sum_j w[j] f(s_j).
/// The vector may extend past m (up to node min(m + panel - 1, grid_intervals))
/// when the last panel is partial. Throws GridIncompatible if the grid has
/// fewer intervals than one panel.
std::vector<double> cumulative_weights(const QuadRule& rule, int m, int grid_intervals);

/// Weights of the degree-p interpolant through unit-spaced nodes 0..p,
/// integrated over [a, b].
std::vector<double> interpolatory_weights(int p, double a, double b);

/// Composite integral of equally spaced samples (samples.size()-1 intervals).
double integrate_samples(const QuadRule& rule, std::span<const double> samples, double h);

}  // namespace splitstep
