#include "splitstep/problems.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "splitstep/errors.hpp"

namespace splitstep {

SplitProblem dahlquist_2x2(double lambda1, double lambda2, double t_end) {
  if (!(lambda1 > 0.0) || !(lambda2 > 0.0)) {
    throw std::invalid_argument("dahlquist_2x2: rates must be positive");
  }
  SplitProblem p;
  p.a = Matrix{{-lambda1, 0.0}, {lambda1, 0.0}};
  p.b = Matrix{{0.0, lambda2}, {0.0, -lambda2}};
  p.u0 = Vector{1.0, 1.0};
  p.t0 = 0.0;
  p.t_end = t_end;
  return p;
}

Vector exact_solution_2x2(double lambda1, double lambda2, double t) {
  if (lambda2 == 0.0) throw std::invalid_argument("exact_solution_2x2: lambda2 must be non-zero");
  const double ratio = lambda1 / lambda2;
  const double c1 = 2.0 / (1.0 + ratio);
  const double c2 = (1.0 - ratio) / (1.0 + ratio);
  const double decay = std::exp(-(lambda1 + lambda2) * t);
  return Vector{c1 - c2 * decay, ratio * c1 + c2 * decay};
}

double OscillatorSpec::spring(double r) const {
  const double v = potential ? potential(r) : 0.0;
  return 2.0 * energy - 2.0 * v - static_cast<double>(l * (l + 1)) / (r * r);
}

SplitProblem radial_oscillator(const OscillatorSpec& spec, FreezePolicy freeze) {
  if (spec.l < 0) throw std::invalid_argument("radial_oscillator: l must be non-negative");
  if (!(spec.r0 > 0.0)) {
    if (spec.l > 0) {
      throw SingularPotential("radial_oscillator: l(l+1)/r^2 is singular for r0 = " +
                              std::to_string(spec.r0));
    }
    throw std::invalid_argument("radial_oscillator: r0 must be positive");
  }
  if (!(spec.r_end > spec.r0)) throw std::invalid_argument("radial_oscillator: need R > r0");

  SplitProblem p;
  p.a = Matrix{{0.0, 1.0}, {0.0, 0.0}};
  if (spec.has_constant_spring()) {
    p.b = Matrix{{0.0, 0.0}, {-spec.spring(spec.r0), 0.0}};
  } else {
    OscillatorSpec copy = spec;
    p.b = Operator(
        [copy](double r) {
          return Matrix{{0.0, 0.0}, {-copy.spring(r), 0.0}};
        },
        2);
  }
  p.u0 = Vector{spec.q0, spec.p0};
  p.t0 = spec.r0;
  p.t_end = spec.r_end;
  p.freeze = freeze;
  return p;
}

Vector oscillator_exact(const OscillatorSpec& spec, double r) {
  if (!spec.has_constant_spring()) {
    throw std::invalid_argument("oscillator_exact: needs a constant spring constant");
  }
  const double k = spec.spring(spec.r0);
  if (!(k > 0.0)) throw std::invalid_argument("oscillator_exact: spring constant must be positive");
  const double omega = std::sqrt(k);
  const double phase = omega * (r - spec.r0);
  const double c = std::cos(phase);
  const double s = std::sin(phase);
  return Vector{spec.q0 * c + spec.p0 / omega * s, -spec.q0 * omega * s + spec.p0 * c};
}

double oscillator_energy(const OscillatorSpec& spec, double r, const Vector& state) {
  return 0.5 * state[1] * state[1] + 0.5 * spec.spring(r) * state[0] * state[0];
}

}  // namespace splitstep
