#pragma once

#include <functional>
#include <string_view>
#include <variant>

#include "splitstep/linalg.hpp"

namespace splitstep {

/// Where a time-dependent operator is sampled on each splitting partition.
enum class FreezePolicy { Midpoint, Left };

std::string_view to_string(FreezePolicy policy);

/// A linear operator that is either constant or a function of time.
class Operator {
 public:
  using TimeFunction = std::function<Matrix(double)>;

  Operator() = default;
  Operator(Matrix constant) : repr_(std::move(constant)) {}  // NOLINT(google-explicit-constructor)
  Operator(TimeFunction fn, std::size_t dim) : repr_(std::move(fn)), dim_(dim) {}

  bool is_constant() const { return std::holds_alternative<Matrix>(repr_); }
  std::size_t dim() const;
  Matrix at(double t) const;

 private:
  std::variant<Matrix, TimeFunction> repr_;
  std::size_t dim_ = 0;
};

/// u' = (A(t) + B(t)) u on [t0, t_end], u(t0) = u0.
struct SplitProblem {
  Operator a;
  Operator b;
  Vector u0;
  double t0 = 0.0;
  double t_end = 1.0;
  FreezePolicy freeze = FreezePolicy::Midpoint;

  bool is_constant() const { return a.is_constant() && b.is_constant(); }
  /// Throws DimensionError / std::invalid_argument when the invariants fail.
  void validate() const;
};

}  // namespace splitstep
