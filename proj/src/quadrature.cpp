#include "splitstep/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "splitstep/errors.hpp"

namespace splitstep {

namespace {

constexpr std::array<double, 2> kTrapezoid{1.0 / 2.0, 1.0 / 2.0};
constexpr std::array<double, 3> kSimpson{1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0};
constexpr std::array<double, 5> kBode{7.0 / 90.0, 32.0 / 90.0, 12.0 / 90.0, 32.0 / 90.0,
                                      7.0 / 90.0};

// Coefficients of a polynomial, lowest degree first.
using Poly = std::vector<double>;

Poly multiply_linear(const Poly& p, double root, double scale) {
  // p(x) * (x - root) * scale
  Poly out(p.size() + 1, 0.0);
  for (std::size_t k = 0; k < p.size(); ++k) {
    out[k + 1] += p[k] * scale;
    out[k] -= p[k] * root * scale;
  }
  return out;
}

double integrate_poly(const Poly& p, double a, double b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double e = static_cast<double>(k + 1);
    double pa = 1.0, pb = 1.0;
    for (std::size_t i = 0; i <= k; ++i) {
      pa *= a;
      pb *= b;
    }
    acc += p[k] * (pb - pa) / e;
  }
  return acc;
}

}  // namespace

std::optional<QuadRule> QuadRule::parse(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "trapezoid" || lower == "trapezoidal") return trapezoid();
  if (lower == "simpson" || lower == "bdf3") return simpson();
  if (lower == "bode" || lower == "boole") return bode();
  return std::nullopt;
}

int QuadRule::panel_width() const {
  switch (kind_) {
    case RuleKind::Trapezoid: return 1;
    case RuleKind::Simpson: return 2;
    case RuleKind::Bode: return 4;
  }
  return 1;
}

int QuadRule::nominal_order() const {
  switch (kind_) {
    case RuleKind::Trapezoid: return 2;
    case RuleKind::Simpson: return 3;
    case RuleKind::Bode: return 4;
  }
  return 2;
}

std::span<const double> QuadRule::panel_weights() const {
  switch (kind_) {
    case RuleKind::Trapezoid: return kTrapezoid;
    case RuleKind::Simpson: return kSimpson;
    case RuleKind::Bode: return kBode;
  }
  return kTrapezoid;
}

std::string_view QuadRule::name() const {
  switch (kind_) {
    case RuleKind::Trapezoid: return "trapezoid";
    case RuleKind::Simpson: return "simpson";
    case RuleKind::Bode: return "bode";
  }
  return "trapezoid";
}

std::string_view QuadRule::label() const {
  switch (kind_) {
    case RuleKind::Trapezoid: return "Trapezoidal";
    case RuleKind::Simpson: return "BDF3/Simpson";
    case RuleKind::Bode: return "Bode";
  }
  return "Trapezoidal";
}

std::vector<double> interpolatory_weights(int p, double a, double b) {
  std::vector<double> out(static_cast<std::size_t>(p) + 1);
  for (int k = 0; k <= p; ++k) {
    Poly basis{1.0};
    for (int j = 0; j <= p; ++j) {
      if (j == k) continue;
      basis = multiply_linear(basis, static_cast<double>(j), 1.0 / static_cast<double>(k - j));
    }
    out[static_cast<std::size_t>(k)] = integrate_poly(basis, a, b);
  }
  return out;
}

std::vector<double> cumulative_weights(const QuadRule& rule, int m, int grid_intervals) {
  const int p = rule.panel_width();
  if (m < 0 || m > grid_intervals) {
    throw GridIncompatible("cumulative_weights: node " + std::to_string(m) + " outside grid of " +
                           std::to_string(grid_intervals) + " intervals");
  }
  if (grid_intervals < p) {
    throw GridIncompatible(std::string(rule.name()) + " needs at least " + std::to_string(p) +
                           " intervals per step, grid has " + std::to_string(grid_intervals));
  }
  const int full = m / p;
  const int rest = m - full * p;
  const int first = full * p;
  const int shifted = std::min(first, grid_intervals - p);
  const int last_node = rest == 0 ? m : shifted + p;

  std::vector<double> w(static_cast<std::size_t>(last_node) + 1, 0.0);
  const auto panel = rule.panel_weights();
  for (int q = 0; q < full; ++q) {
    for (int k = 0; k <= p; ++k) w[static_cast<std::size_t>(q * p + k)] += p * panel[k];
  }
  if (rest != 0) {
    const double a = static_cast<double>(first - shifted);
    const auto tail = interpolatory_weights(p, a, a + rest);
    for (int k = 0; k <= p; ++k) w[static_cast<std::size_t>(shifted + k)] += tail[k];
  }
  return w;
}

double integrate_samples(const QuadRule& rule, std::span<const double> samples, double h) {
  if (samples.size() < 2) return 0.0;
  const int n = static_cast<int>(samples.size()) - 1;
  const auto w = cumulative_weights(rule, n, n);
  double acc = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) acc += w[j] * samples[j];
  return h * acc;
}

}  // namespace splitstep
