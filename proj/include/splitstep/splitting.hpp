#pragma once

// Iterative operator splitting for u' = (A + B) u.
//
// On each partition [t^n, t^n + tau] the iterates alternate
//
//   odd  i:  c_i' = A c_i + B c_{i-1}
//   even i:  c_i' = B c_i + A c_{i-1}
//
// with c_i(t^n) = c^n and c_0 = 0. Each sweep evaluates the variation-of-
// constants integral on a uniform node grid with a Newton-Cotes rule.

#include <cstddef>
#include <vector>

#include "splitstep/linalg.hpp"
#include "splitstep/quadrature.hpp"
#include "splitstep/split_problem.hpp"

namespace splitstep {

enum class SweepSide { Odd, Even };

/// Side used by iteration number `i` (1-based): odd i propagates with A.
constexpr SweepSide side_for_iteration(int i) { return i % 2 == 1 ? SweepSide::Odd : SweepSide::Even; }

/// One iterate sampled on nodes t0 + m*h, m = 0..intervals.
class IterateGrid {
 public:
  /// The c_0 = 0 seed. Throws GridIncompatible if h does not divide tau.
  static IterateGrid zeros(double t0, double tau, double h, std::size_t dim);

  double t0() const { return t0_; }
  double tau() const { return tau_; }
  double h() const { return tau_ / static_cast<double>(intervals_); }
  int intervals() const { return intervals_; }
  std::size_t dim() const { return values_.front().size(); }
  double node_time(int m) const { return t0_ + h() * m; }

  const Vector& value(int m) const { return values_[static_cast<std::size_t>(m)]; }
  const Vector& back() const { return values_.back(); }
  const std::vector<Vector>& values() const { return values_; }

 private:
  friend class SweepEngine;
  IterateGrid(double t0, double tau, int intervals, std::vector<Vector> values)
      : t0_(t0), tau_(tau), intervals_(intervals), values_(std::move(values)) {}

  double t0_ = 0.0;
  double tau_ = 0.0;
  int intervals_ = 0;
  std::vector<Vector> values_;
};

/// Number of h-intervals in tau; throws GridIncompatible unless tau/h is an integer.
int grid_intervals(double tau, double h);

/// exp(P * k * h) for k = min_k .. intervals. Negative k are needed by the
/// partial-panel tail of the higher-order rules.
class PropagatorTable {
 public:
  PropagatorTable(const Matrix& generator, double h, int intervals, int min_k);

  const Matrix& at(int k) const { return table_[static_cast<std::size_t>(k - min_k_)]; }
  int min_k() const { return min_k_; }
  int intervals() const { return intervals_; }

 private:
  int min_k_;
  int intervals_;
  std::vector<Matrix> table_;
};

/// Precomputed propagators and quadrature weights for sweeps over one grid
/// shape. Reusable across partitions as long as A, B, h and the grid are fixed.
class SweepEngine {
 public:
  SweepEngine(Matrix a, Matrix b, double tau, double h, QuadRule rule);

  IterateGrid sweep(const IterateGrid& prev, const Vector& c_n, SweepSide side) const;

  /// Runs `iterations` alternating sweeps from the zero seed starting at t0.
  IterateGrid run(double t0, const Vector& c_n, int iterations) const;

  int intervals() const { return intervals_; }
  double h() const { return h_; }

 private:
  Matrix a_;
  Matrix b_;
  double tau_;
  double h_;
  int intervals_;
  QuadRule rule_;
  PropagatorTable exp_a_;
  PropagatorTable exp_b_;
  std::vector<std::vector<double>> weights_;
};

/// One sweep. `prev` supplies the grid and the previous iterate; the result
/// satisfies value(0) == c_n exactly.
IterateGrid sweep(const Matrix& a, const Matrix& b, const IterateGrid& prev, const Vector& c_n,
                  SweepSide side, const QuadRule& rule);

struct TrajectoryPoint {
  double t;
  Vector state;
};

/// States at every partition boundary, starting with (t0, u0).
std::vector<TrajectoryPoint> iterative_split_trajectory(const SplitProblem& problem,
                                                        int partitions, int iterations,
                                                        const QuadRule& rule, double h);

/// State at t_end after `partitions` equal steps of `iterations` sweeps each.
Vector iterative_split_solve(const SplitProblem& problem, int partitions, int iterations,
                             const QuadRule& rule, double h);

/// phi_k(tau*M) = int_0^1 exp((1-s) tau M) s^{k-1}/(k-1)! ds, phi_0 = exp(tau M).
Matrix phi_k(const Matrix& m, double tau, int k);

/// Closed-form second iterate (odd sweep then even sweep, exact integrals).
/// Throws SingularMatrix when B - A is singular.
Vector laplace_c2(const Matrix& a, const Matrix& b, const Vector& c_n, double t);

/// Closed-form third iterate. Throws SingularMatrix when B - A is singular.
Vector laplace_c3(const Matrix& a, const Matrix& b, const Vector& c_n, double t);

/// The generator [[A, 0], [A, B]] of the coupled two-stage system.
Matrix block_generator(const Matrix& a, const Matrix& b);

/// [[exp(At), 0], [R(t), exp(Bt)]] with R(t) = int_0^t exp(Br) A exp(A(t-r)) dr
/// evaluated by fine composite Bode quadrature.
Matrix block_semigroup_propagator(const Matrix& a, const Matrix& b, double t);

}  // namespace splitstep
