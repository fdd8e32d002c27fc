#pragma once

#include <functional>

#include "splitstep/split_problem.hpp"

namespace splitstep {

/// Two-compartment exchange u' = [[-l1, l2], [l1, -l2]] u on [0, t_end],
/// u0 = (1, 1), split into A = [[-l1, 0], [l1, 0]] and B = [[0, l2], [0, -l2]].
SplitProblem dahlquist_2x2(double lambda1, double lambda2, double t_end = 1.0);

/// Closed-form solution of the same system from u0 = (1, 1).
Vector exact_solution_2x2(double lambda1, double lambda2, double t);

/// Radial Schroedinger equation u'' = f(r, E) u recast as an oscillator in
/// "time" r with spring constant k(r) = 2E - 2V(r) - l(l+1)/r^2.
struct OscillatorSpec {
  double energy = 0.5;
  int l = 0;
  /// Potential V(r); empty means V = 0.
  std::function<double(double)> potential;
  double r0 = 1.0;
  double r_end = 6.0;
  double q0 = 1.0;
  double p0 = 0.0;

  double spring(double r) const;
  /// True when V is absent and l = 0, so k is constant.
  bool has_constant_spring() const { return !potential && l == 0; }
};

/// State (q, p); A = [[0, 1], [0, 0]] (q' = p), B(r) = [[0, 0], [-k(r), 0]] (p' = -k q).
/// Throws SingularPotential for r0 <= 0 with l > 0.
SplitProblem radial_oscillator(const OscillatorSpec& spec, FreezePolicy freeze = FreezePolicy::Midpoint);

/// Exact (q, p) at r for a constant positive spring constant.
Vector oscillator_exact(const OscillatorSpec& spec, double r);

/// H = p^2/2 + k(r) q^2/2.
double oscillator_energy(const OscillatorSpec& spec, double r, const Vector& state);

}  // namespace splitstep
