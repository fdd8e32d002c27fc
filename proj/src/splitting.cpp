#include "splitstep/splitting.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "splitstep/errors.hpp"

namespace splitstep {

std::string_view to_string(FreezePolicy policy) {
  return policy == FreezePolicy::Midpoint ? "midpoint" : "left";
}

std::size_t Operator::dim() const {
  if (const auto* m = std::get_if<Matrix>(&repr_)) return m->rows();
  return dim_;
}

Matrix Operator::at(double t) const {
  if (const auto* m = std::get_if<Matrix>(&repr_)) return *m;
  Matrix out = std::get<TimeFunction>(repr_)(t);
  if (out.rows() != dim_ || out.cols() != dim_) {
    throw DimensionError("Operator: time function returned " + std::to_string(out.rows()) + "x" +
                         std::to_string(out.cols()) + ", expected " + std::to_string(dim_));
  }
  return out;
}

void SplitProblem::validate() const {
  const std::size_t n = u0.size();
  if (a.dim() != n || b.dim() != n) {
    throw DimensionError("SplitProblem: operators of size " + std::to_string(a.dim()) + "/" +
                         std::to_string(b.dim()) + " for a state of length " + std::to_string(n));
  }
  if (a.is_constant() && !a.at(t0).is_square()) throw DimensionError("SplitProblem: A not square");
  if (b.is_constant() && !b.at(t0).is_square()) throw DimensionError("SplitProblem: B not square");
  if (!(t_end > t0)) throw std::invalid_argument("SplitProblem: t_end must exceed t0");
}

int grid_intervals(double tau, double h) {
  if (!(h > 0.0) || !(tau > 0.0)) {
    throw GridIncompatible("node spacing and step length must be positive");
  }
  const double ratio = tau / h;
  const double rounded = std::round(ratio);
  if (rounded < 1.0 || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw GridIncompatible("node spacing h=" + std::to_string(h) +
                           " does not divide step length tau=" + std::to_string(tau));
  }
  return static_cast<int>(rounded);
}

IterateGrid IterateGrid::zeros(double t0, double tau, double h, std::size_t dim) {
  const int m = grid_intervals(tau, h);
  return IterateGrid(t0, tau, m, std::vector<Vector>(static_cast<std::size_t>(m) + 1, Vector(dim)));
}

PropagatorTable::PropagatorTable(const Matrix& generator, double h, int intervals, int min_k)
    : min_k_(min_k), intervals_(intervals) {
  table_.reserve(static_cast<std::size_t>(intervals - min_k + 1));
  for (int k = min_k; k <= intervals; ++k) table_.push_back(expm(generator, h * k));
}

namespace {

void check_pair(const Matrix& a, const Matrix& b, const char* op) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError(std::string(op) + ": A and B must be square and of equal size");
  }
}

}  // namespace

SweepEngine::SweepEngine(Matrix a, Matrix b, double tau, double h, QuadRule rule)
    : a_(std::move(a)),
      b_(std::move(b)),
      tau_(tau),
      h_(tau / grid_intervals(tau, h)),
      intervals_(grid_intervals(tau, h)),
      rule_(rule),
      exp_a_(a_, h_, intervals_, 1 - rule.panel_width()),
      exp_b_(b_, h_, intervals_, 1 - rule.panel_width()) {
  check_pair(a_, b_, "SweepEngine");
  weights_.reserve(static_cast<std::size_t>(intervals_) + 1);
  for (int m = 0; m <= intervals_; ++m) weights_.push_back(cumulative_weights(rule_, m, intervals_));
}

IterateGrid SweepEngine::sweep(const IterateGrid& prev, const Vector& c_n, SweepSide side) const {
  const std::size_t n = a_.rows();
  if (prev.intervals() != intervals_ || std::abs(prev.tau() - tau_) > 1e-12 * tau_) {
    throw GridIncompatible("sweep: previous iterate lives on a different grid");
  }
  if (c_n.size() != n || prev.dim() != n) {
    throw DimensionError("sweep: state length does not match operator size");
  }
  const bool odd = side == SweepSide::Odd;
  const PropagatorTable& prop = odd ? exp_a_ : exp_b_;
  const Matrix& forcing = odd ? b_ : a_;

  // Forcing term Q c_{i-1}(s_j) at every node.
  std::vector<Vector> forced;
  forced.reserve(prev.values().size());
  for (const Vector& v : prev.values()) forced.push_back(forcing * v);

  std::vector<Vector> values;
  values.reserve(prev.values().size());
  values.push_back(c_n);
  for (int m = 1; m <= intervals_; ++m) {
    Vector v = prop.at(m) * c_n;
    const auto& w = weights_[static_cast<std::size_t>(m)];
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (w[j] == 0.0) continue;
      apply_accumulate(prop.at(m - static_cast<int>(j)), forced[j].entries(), h_ * w[j], v.entries());
    }
    values.push_back(std::move(v));
  }
  return IterateGrid(prev.t0(), tau_, intervals_, std::move(values));
}

IterateGrid SweepEngine::run(double t0, const Vector& c_n, int iterations) const {
  if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  IterateGrid current = IterateGrid::zeros(t0, tau_, h_, c_n.size());
  for (int i = 1; i <= iterations; ++i) current = sweep(current, c_n, side_for_iteration(i));
  return current;
}

IterateGrid sweep(const Matrix& a, const Matrix& b, const IterateGrid& prev, const Vector& c_n,
                  SweepSide side, const QuadRule& rule) {
  check_pair(a, b, "sweep");
  const SweepEngine engine(a, b, prev.tau(), prev.h(), rule);
  return engine.sweep(prev, c_n, side);
}

std::vector<TrajectoryPoint> iterative_split_trajectory(const SplitProblem& problem,
                                                        int partitions, int iterations,
                                                        const QuadRule& rule, double h) {
  problem.validate();
  if (partitions < 1) throw std::invalid_argument("partitions must be at least 1");
  if (iterations < 1) throw std::invalid_argument("iterations must be at least 1");
  const double tau = (problem.t_end - problem.t0) / partitions;
  grid_intervals(tau, h);

  std::vector<TrajectoryPoint> out;
  out.reserve(static_cast<std::size_t>(partitions) + 1);
  out.push_back({problem.t0, problem.u0});

  std::optional<SweepEngine> constant_engine;
  if (problem.is_constant()) {
    constant_engine.emplace(problem.a.at(problem.t0), problem.b.at(problem.t0), tau, h, rule);
  }

  Vector state = problem.u0;
  for (int n = 0; n < partitions; ++n) {
    const double t_n = problem.t0 + tau * n;
    IterateGrid last = [&] {
      if (constant_engine) return constant_engine->run(t_n, state, iterations);
      const double t_freeze = problem.freeze == FreezePolicy::Midpoint ? t_n + 0.5 * tau : t_n;
      const SweepEngine engine(problem.a.at(t_freeze), problem.b.at(t_freeze), tau, h, rule);
      return engine.run(t_n, state, iterations);
    }();
    state = last.back();
    out.push_back({n + 1 == partitions ? problem.t_end : t_n + tau, state});
  }
  return out;
}

Vector iterative_split_solve(const SplitProblem& problem, int partitions, int iterations,
                             const QuadRule& rule, double h) {
  return iterative_split_trajectory(problem, partitions, iterations, rule, h).back().state;
}

}  // namespace splitstep
