#pragma once

// Test-only reference computations. Nothing here calls into the code under
// test beyond the Matrix/Vector containers.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "splitstep/linalg.hpp"

namespace oracle {

using splitstep::Matrix;
using splitstep::Vector;

inline Matrix random_matrix(std::mt19937_64& rng, std::size_t n, double half_width) {
  std::uniform_real_distribution<double> dist(-half_width, half_width);
  std::vector<double> e(n * n);
  for (double& x : e) x = dist(rng);
  return Matrix(n, n, std::move(e));
}

/// exp(tM) for 2x2 M via Cayley-Hamilton: e^{st}[c(t) I + g(t) (M - sI)],
/// s = tr/2, d^2 = s^2 - det.
inline Matrix expm_2x2(const Matrix& m, double t) {
  const double s = 0.5 * (m(0, 0) + m(1, 1));
  const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const double d2 = s * s - det;
  double c = 1.0, g = t;
  if (d2 > 1e-300) {
    const double d = std::sqrt(d2);
    c = std::cosh(d * t);
    g = std::sinh(d * t) / d;
  } else if (d2 < -1e-300) {
    const double d = std::sqrt(-d2);
    c = std::cos(d * t);
    g = std::sin(d * t) / d;
  }
  const double e = std::exp(s * t);
  Matrix out(2, 2);
  out(0, 0) = e * (c + g * (m(0, 0) - s));
  out(0, 1) = e * g * m(0, 1);
  out(1, 0) = e * g * m(1, 0);
  out(1, 1) = e * (c + g * (m(1, 1) - s));
  return out;
}

/// Truncated Taylor series in long double with many terms; fine for ||tM|| <~ 5.
inline Matrix expm_taylor(const Matrix& m, double t, int terms = 80) {
  const std::size_t n = m.rows();
  std::vector<long double> sum(n * n, 0.0L), term(n * n, 0.0L), next(n * n);
  for (std::size_t i = 0; i < n; ++i) sum[i * n + i] = term[i * n + i] = 1.0L;
  for (int k = 1; k < terms; ++k) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) {
        long double acc = 0.0L;
        for (std::size_t l = 0; l < n; ++l) acc += term[r * n + l] * static_cast<long double>(m(l, c));
        next[r * n + c] = acc * static_cast<long double>(t) / k;
      }
    }
    term.swap(next);
    for (std::size_t i = 0; i < n * n; ++i) sum[i] += term[i];
  }
  std::vector<double> out(sum.begin(), sum.end());
  return Matrix(n, n, std::move(out));
}

/// Composite Simpson on [0, t] with `n` (even) panels of a matrix-valued integrand.
template <typename F>
Matrix simpson_matrix(F f, double t, int n, std::size_t dim) {
  const double h = t / n;
  Matrix acc(dim, dim);
  for (int j = 0; j <= n; ++j) {
    const double w = (j == 0 || j == n) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
    acc += (w * h / 3.0) * f(h * j);
  }
  return acc;
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

}  // namespace oracle
