#pragma once

#include <stdexcept>
#include <string>

namespace splitstep {

/// Operand shapes do not conform (non-square input, mismatched lengths, ...).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A pivot fell below the singularity threshold during factorization.
class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The intra-step node grid cannot carry the requested quadrature rule,
/// or the node spacing does not divide the step length.
class GridIncompatible : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fewer than two usable points for an order fit.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Radial potential term l(l+1)/r^2 is unbounded on the requested interval.
class SingularPotential : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace splitstep
