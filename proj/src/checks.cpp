#include "splitstep/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "splitstep/errors.hpp"
#include "splitstep/problems.hpp"
#include "splitstep/splitting.hpp"

namespace splitstep {

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t n, double half_width) {
  std::uniform_real_distribution<double> dist(-half_width, half_width);
  std::vector<double> entries(n * n);
  for (double& x : entries) x = dist(rng);
  return Matrix(n, n, std::move(entries));
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

double two_by_two_det(const Matrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

}  // namespace

CheckResult check_phi_recurrence(int samples, std::uint64_t seed) {
  CheckResult r{"phi recurrence", 0.0, 1e-9, false, {}};
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const std::size_t n = 2 + static_cast<std::size_t>(s % 3);
    const Matrix m = random_matrix(rng, n, 1.0);
    for (double tau : {0.1, 1.0}) {
      std::vector<Matrix> phis;
      for (int k = 0; k <= 5; ++k) phis.push_back(phi_k(m, tau, k));
      double factorial = 1.0;
      for (int k = 0; k <= 4; ++k) {
        if (k > 0) factorial *= k;
        const Matrix rhs = (1.0 / factorial) * Matrix::identity(n) + tau * (m * phis[static_cast<std::size_t>(k + 1)]);
        r.max_residual = std::max(r.max_residual, (phis[static_cast<std::size_t>(k)] - rhs).max_abs());
      }
    }
  }
  r.passed = r.max_residual <= r.tolerance;
  r.detail = std::to_string(samples) + " matrices, k=0..4, tau in {0.1, 1}";
  return r;
}

CheckResult check_block_semigroup(int samples, std::uint64_t seed) {
  CheckResult r{"block semigroup", 0.0, 1e-8, false, {}};
  std::mt19937_64 rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Matrix a = random_matrix(rng, 2, 1.0);
    const Matrix b = random_matrix(rng, 2, 1.0);
    for (double t : {0.1, 0.5, 1.0}) {
      const Matrix diff = block_semigroup_propagator(a, b, t) - expm(block_generator(a, b), t);
      r.max_residual = std::max(r.max_residual, diff.max_abs());
    }
    // A = B: the coupling block collapses to t A exp(At).
    for (double t : {0.1, 0.5, 1.0}) {
      const Matrix lower = block_semigroup_propagator(a, a, t).block(2, 0, 2, 2);
      r.max_residual = std::max(r.max_residual, (lower - t * (a * expm(a, t))).max_abs());
    }
  }
  r.passed = r.max_residual <= r.tolerance;
  r.detail = std::to_string(samples) + " random 2x2 pairs, t in {0.1, 0.5, 1}, plus A = B";
  return r;
}

std::vector<CheckResult> check_laplace(int samples, std::uint64_t seed) {
  CheckResult c2{"laplace c2 vs sweeps", 0.0, 1e-6, false, {}};
  CheckResult c3{"laplace c3 vs sweeps", 0.0, 1e-6, false, {}};
  CheckResult singular{"laplace singular exchange pair", 0.0, 0.0, false, {}};
  std::mt19937_64 rng(seed);
  const double t = 1.0;
  const double h = 1e-3;
  int used = 0;
  while (used < samples) {
    const Matrix a = random_matrix(rng, 2, 0.5);
    const Matrix b = random_matrix(rng, 2, 0.5);
    if (std::abs(two_by_two_det(b - a)) < 0.05) continue;
    const Vector c{1.0, 1.0};
    const SweepEngine engine(a, b, t, h, QuadRule::bode());
    IterateGrid it = engine.run(0.0, c, 2);
    c2.max_residual = std::max(c2.max_residual, (laplace_c2(a, b, c, t) - it.back()).norm_inf());
    it = engine.sweep(it, c, SweepSide::Odd);
    c3.max_residual = std::max(c3.max_residual, (laplace_c3(a, b, c, t) - it.back()).norm_inf());
    ++used;
  }
  c2.passed = c2.max_residual <= c2.tolerance;
  c3.passed = c3.max_residual <= c3.tolerance;
  c2.detail = c3.detail = std::to_string(samples) + " pairs, Bode sweeps with h=1e-3, t=1";

  const SplitProblem exchange = dahlquist_2x2(0.25, 0.5);
  try {
    laplace_c2(exchange.a.at(0.0), exchange.b.at(0.0), exchange.u0, 1.0);
    singular.detail = "no error raised for det(B - A) = 0";
  } catch (const SingularMatrix& e) {
    singular.passed = true;
    singular.detail = std::string("expected SingularMatrix: ") + e.what();
  }
  c2.detail += ", max residual " + fmt(c2.max_residual);
  c3.detail += ", max residual " + fmt(c3.max_residual);
  return {c2, c3, singular};
}

}  // namespace splitstep
