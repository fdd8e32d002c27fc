// phi-functions, closed-form iterates and the two-stage block propagator.

#include <cmath>
#include <string>
#include <vector>

#include "splitstep/errors.hpp"
#include "splitstep/splitting.hpp"

namespace splitstep {

namespace {

// Resolution of the fine composite rules below (multiple of 4 for Bode).
constexpr int kPhiIntervals = 1024;
constexpr int kBlockIntervals = 512;

void check_pair(const Matrix& a, const Matrix& b, const char* op) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
    throw DimensionError(std::string(op) + ": A and B must be square and of equal size");
  }
}

bool commutator_negligible(const Matrix& x, const Matrix& y) {
  const double scale = std::max(1.0, x.max_abs() * y.max_abs());
  return (x * y - y * x).max_abs() <= 1e-13 * scale;
}

// Solution Y of P Y - Y Q = G. When P, Q and G commute this is the partial
// fraction factor G (P - Q)^{-1}; otherwise the full Sylvester system is solved.
Matrix partial_fraction_factor(const Matrix& p, const Matrix& q, const Matrix& g,
                               const Matrix& difference_inverse) {
  Matrix y = g * difference_inverse;
  const Matrix residual = p * y - y * q - g;
  if (residual.max_abs() <= 1e-12 * std::max(1.0, g.max_abs())) return y;
  return solve_sylvester(p, q, g);
}

// int_0^t exp(P(t-s)) G exp(P s) ds; the upper-right block of exp([[P, G], [0, P]] t).
Matrix resonant_integral(const Matrix& p, const Matrix& g, double t) {
  if (commutator_negligible(p, g)) return t * (g * expm(p, t));
  const std::size_t n = p.rows();
  Matrix big(2 * n, 2 * n);
  big.set_block(0, 0, p);
  big.set_block(0, n, g);
  big.set_block(n, n, p);
  return expm(big, t).block(0, n, n, n);
}

}  // namespace

Matrix phi_k(const Matrix& m, double tau, int k) {
  if (!m.is_square()) throw DimensionError("phi_k: matrix must be square");
  if (k < 0) throw std::invalid_argument("phi_k: k must be non-negative");
  if (k == 0) return expm(m, tau);

  const std::size_t n = m.rows();
  const QuadRule rule = QuadRule::bode();
  const auto w = cumulative_weights(rule, kPhiIntervals, kPhiIntervals);
  const double h = 1.0 / kPhiIntervals;
  double factorial = 1.0;
  for (int j = 2; j < k; ++j) factorial *= j;

  Matrix out(n, n);
  for (int j = 0; j <= kPhiIntervals; ++j) {
    const double s = h * j;
    const double poly = (k == 1 ? 1.0 : std::pow(s, k - 1)) / factorial;
    if (poly == 0.0) continue;
    out += (h * w[static_cast<std::size_t>(j)] * poly) * expm(m, (1.0 - s) * tau);
  }
  return out;
}

Vector laplace_c2(const Matrix& a, const Matrix& b, const Vector& c_n, double t) {
  check_pair(a, b, "laplace_c2");
  const Matrix b_minus_a_inv = inverse(b - a);
  // c_2(t) = e^{Bt} c + (e^{Bt} Y - Y e^{At}) c,  B Y - Y A = A.
  const Matrix y = partial_fraction_factor(b, a, a, b_minus_a_inv);
  const Matrix exp_a = expm(a, t);
  const Matrix exp_b = expm(b, t);
  return exp_b * c_n + (exp_b * y - y * exp_a) * c_n;
}

Vector laplace_c3(const Matrix& a, const Matrix& b, const Vector& c_n, double t) {
  check_pair(a, b, "laplace_c3");
  const std::size_t n = a.rows();
  const Matrix b_minus_a_inv = inverse(b - a);
  const Matrix a_minus_b_inv = -1.0 * b_minus_a_inv;
  const Matrix y = partial_fraction_factor(b, a, a, b_minus_a_inv);
  // A Z - Z B = B.
  const Matrix z = partial_fraction_factor(a, b, b, a_minus_b_inv);
  const Matrix exp_a = expm(a, t);
  const Matrix exp_b = expm(b, t);

  // c_2(s) = e^{Bs} (I + Y) c - Y e^{As} c, fed through the odd sweep.
  const Matrix transfer = (exp_a * z - z * exp_b) * (Matrix::identity(n) + y);
  const Matrix resonant = resonant_integral(a, b * y, t);
  return exp_a * c_n + transfer * c_n - resonant * c_n;
}

Matrix block_generator(const Matrix& a, const Matrix& b) {
  check_pair(a, b, "block_generator");
  const std::size_t n = a.rows();
  Matrix c(2 * n, 2 * n);
  c.set_block(0, 0, a);
  c.set_block(n, 0, a);
  c.set_block(n, n, b);
  return c;
}

Matrix block_semigroup_propagator(const Matrix& a, const Matrix& b, double t) {
  check_pair(a, b, "block_semigroup_propagator");
  const std::size_t n = a.rows();
  Matrix out(2 * n, 2 * n);
  out.set_block(0, 0, expm(a, t));
  out.set_block(n, n, expm(b, t));
  if (t == 0.0) return out;

  const auto w = cumulative_weights(QuadRule::bode(), kBlockIntervals, kBlockIntervals);
  const double h = t / kBlockIntervals;
  Matrix coupling(n, n);
  for (int j = 0; j <= kBlockIntervals; ++j) {
    const double r = h * j;
    coupling += (h * w[static_cast<std::size_t>(j)]) * (expm(b, r) * a * expm(a, t - r));
  }
  out.set_block(n, 0, coupling);
  return out;
}

}  // namespace splitstep
