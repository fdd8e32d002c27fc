#pragma once

// Self-contained property suites behind `splitstep check`.

#include <cstdint>
#include <string>
#include <vector>

namespace splitstep {

struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

/// phi_k - (I/k! + tau M phi_{k+1}) for k = 0..4 on random matrices, tau in {0.1, 1}.
CheckResult check_phi_recurrence(int samples = 20, std::uint64_t seed = 7);

/// Block propagator against expm of the block generator, plus the A = B case.
CheckResult check_block_semigroup(int samples = 20, std::uint64_t seed = 11);

/// Closed-form c2/c3 against fine-grid sweeps; the singular exchange pair must throw.
std::vector<CheckResult> check_laplace(int samples = 20, std::uint64_t seed = 13);

}  // namespace splitstep
