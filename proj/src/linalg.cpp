#include "splitstep/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "splitstep/errors.hpp"

namespace splitstep {

namespace {

void require_finite(std::span<const double> xs, const char* what) {
  for (double x : xs) {
    if (!std::isfinite(x)) throw std::domain_error(std::string(what) + ": non-finite entry");
  }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

void require_square(const Matrix& m, const char* op) {
  if (!m.is_square()) {
    throw DimensionError(std::string(op) + ": matrix must be square, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

// In-place LU with partial pivoting on a row-major n×n buffer.
struct LuFactors {
  std::size_t n = 0;
  std::vector<double> lu;
  std::vector<std::size_t> perm;
};

LuFactors lu_factor(const Matrix& m, double rel_tol, const char* op) {
  require_square(m, op);
  LuFactors f;
  f.n = m.rows();
  f.lu.assign(m.entries().begin(), m.entries().end());
  f.perm.resize(f.n);
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});

  const double threshold = rel_tol * m.max_abs();
  const std::size_t n = f.n;
  auto at = [&](std::size_t r, std::size_t c) -> double& { return f.lu[r * n + c]; };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (std::abs(at(r, k)) > std::abs(at(pivot, k))) pivot = r;
    }
    if (std::abs(at(pivot, k)) <= threshold || at(pivot, k) == 0.0) {
      throw SingularMatrix(std::string(op) + ": pivot " + std::to_string(std::abs(at(pivot, k))) +
                           " below threshold at column " + std::to_string(k));
    }
    if (pivot != k) {
      for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(pivot, c));
      std::swap(f.perm[k], f.perm[pivot]);
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      const double factor = at(r, k) / at(k, k);
      at(r, k) = factor;
      for (std::size_t c = k + 1; c < n; ++c) at(r, c) -= factor * at(k, c);
    }
  }
  return f;
}

// Solves in place for one right-hand side already permuted.
void lu_substitute(const LuFactors& f, std::span<double> x) {
  const std::size_t n = f.n;
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < r; ++c) x[r] -= f.lu[r * n + c] * x[c];
  }
  for (std::size_t r = n; r-- > 0;) {
    for (std::size_t c = r + 1; c < n; ++c) x[r] -= f.lu[r * n + c] * x[c];
    x[r] /= f.lu[r * n + r];
  }
}

}  // namespace

// ---------------------------------------------------------------- Vector

Vector::Vector(std::size_t len, double fill) : data_(len, fill) { require_finite(data_, "Vector"); }

Vector::Vector(std::initializer_list<double> entries) : data_(entries) {
  require_finite(data_, "Vector");
}

Vector::Vector(std::vector<double> entries) : data_(std::move(entries)) {
  require_finite(data_, "Vector");
}

double Vector::sum() const { return std::accumulate(data_.begin(), data_.end(), 0.0); }

double Vector::norm_inf() const {
  double out = 0.0;
  for (double x : data_) out = std::max(out, std::abs(x));
  return out;
}

Vector& Vector::operator+=(const Vector& other) {
  if (size() != other.size()) throw DimensionError("Vector +=: length mismatch");
  for (std::size_t i = 0; i < size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& other) {
  if (size() != other.size()) throw DimensionError("Vector -=: length mismatch");
  for (std::size_t i = 0; i < size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Vector& Vector::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator*(double s, Vector v) { return v *= s; }

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
  require_finite(data_, "Matrix");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows_ * cols_) {
    throw DimensionError("Matrix: " + std::to_string(data_.size()) + " entries for a " +
                         std::to_string(rows_) + "x" + std::to_string(cols_) + " shape");
  }
  require_finite(data_, "Matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw DimensionError("Matrix: ragged initializer");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix out(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) out(i, i) = diag[i];
  require_finite(out.data_, "Matrix::diagonal");
  return out;
}

Matrix Matrix::diagonal(std::initializer_list<double> diag) {
  return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

Matrix Matrix::transpose() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

double Matrix::max_abs() const {
  double out = 0.0;
  for (double x : data_) out = std::max(out, std::abs(x));
  return out;
}

double Matrix::norm_inf() const {
  double out = 0.0;
  for (std::size_t r = 0; r < rows_; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) row += std::abs((*this)(r, c));
    out = std::max(out, row);
  }
  return out;
}

double Matrix::norm_fro() const {
  double acc = 0.0;
  for (double x : data_) acc += x * x;
  return std::sqrt(acc);
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionError("Matrix::block: out of range");
  Matrix out(nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out(r, c) = (*this)(r0 + r, c0 + c);
  return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& src) {
  if (r0 + src.rows() > rows_ || c0 + src.cols() > cols_) {
    throw DimensionError("Matrix::set_block: out of range");
  }
  for (std::size_t r = 0; r < src.rows(); ++r)
    for (std::size_t c = 0; c < src.cols(); ++c) (*this)(r0 + r, c0 + c) = src(r, c);
}

Matrix& Matrix::operator+=(const Matrix& other) {
  require_same_shape(*this, other, "Matrix +=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
  require_same_shape(*this, other, "Matrix -=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(double s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    throw DimensionError("Matrix *: inner dimensions " + std::to_string(lhs.cols()) + " and " +
                         std::to_string(rhs.rows()));
  }
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t r = 0; r < lhs.rows(); ++r) {
    for (std::size_t k = 0; k < lhs.cols(); ++k) {
      const double a = lhs(r, k);
      if (a == 0.0) continue;
      for (std::size_t c = 0; c < rhs.cols(); ++c) out(r, c) += a * rhs(k, c);
    }
  }
  return out;
}

Vector operator*(const Matrix& m, const Vector& v) {
  if (m.cols() != v.size()) {
    throw DimensionError("Matrix * Vector: " + std::to_string(m.cols()) + " columns vs length " +
                         std::to_string(v.size()));
  }
  Vector out(m.rows());
  apply_accumulate(m, v.entries(), 1.0, out.entries());
  return out;
}

Matrix mat_mul(const Matrix& lhs, const Matrix& rhs) { return lhs * rhs; }
Matrix mat_add(const Matrix& lhs, const Matrix& rhs) { return lhs + rhs; }
Matrix mat_scale(const Matrix& m, double s) { return s * m; }
Vector mat_apply(const Matrix& m, const Vector& v) { return m * v; }

void apply_accumulate(const Matrix& m, std::span<const double> v, double scale,
                      std::span<double> out) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  const double* a = m.entries().data();
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += a[r * cols + c] * v[c];
    out[r] += scale * acc;
  }
}

// ---------------------------------------------------------------- kernels

Matrix expm(const Matrix& m, double t) {
  require_square(m, "expm");
  if (!std::isfinite(t)) throw std::domain_error("expm: non-finite time");
  const std::size_t n = m.rows();
  if (t == 0.0 || m.max_abs() == 0.0) return Matrix::identity(n);

  Matrix x = t * m;
  const double norm = x.norm_inf();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  x *= std::ldexp(1.0, -squarings);

  // [q/q] Pade; q = 8 keeps the truncation error well under 1e-16 for ||x|| <= 1/2.
  constexpr int q = 8;
  Matrix numer = Matrix::identity(n);
  Matrix denom = Matrix::identity(n);
  Matrix power = Matrix::identity(n);
  double coeff = 1.0;
  for (int k = 1; k <= q; ++k) {
    coeff *= static_cast<double>(q - k + 1) / static_cast<double>(k * (2 * q - k + 1));
    power = power * x;
    numer += coeff * power;
    denom += ((k % 2 == 0) ? coeff : -coeff) * power;
  }
  Matrix out = inverse(denom) * numer;
  for (int s = 0; s < squarings; ++s) out = out * out;
  return out;
}

Matrix inverse(const Matrix& m, double rel_tol) {
  const LuFactors f = lu_factor(m, rel_tol, "inverse");
  const std::size_t n = f.n;
  Matrix out(n, n);
  std::vector<double> col(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) col[r] = (f.perm[r] == c) ? 1.0 : 0.0;
    lu_substitute(f, col);
    for (std::size_t r = 0; r < n; ++r) out(r, c) = col[r];
  }
  return out;
}

Vector solve(const Matrix& m, const Vector& b, double rel_tol) {
  if (m.rows() != b.size()) throw DimensionError("solve: right-hand side length mismatch");
  const LuFactors f = lu_factor(m, rel_tol, "solve");
  std::vector<double> x(f.n);
  for (std::size_t r = 0; r < f.n; ++r) x[r] = b[f.perm[r]];
  lu_substitute(f, x);
  return Vector(std::move(x));
}

Matrix solve_sylvester(const Matrix& p, const Matrix& q, const Matrix& g) {
  require_square(p, "solve_sylvester");
  require_square(q, "solve_sylvester");
  if (g.rows() != p.rows() || g.cols() != q.rows()) {
    throw DimensionError("solve_sylvester: right-hand side shape mismatch");
  }
  const std::size_t n = p.rows();
  const std::size_t k = q.rows();
  // Unknown X(i, j) lives at index i * k + j.
  Matrix system(n * k, n * k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t row = i * k + j;
      for (std::size_t l = 0; l < n; ++l) system(row, l * k + j) += p(i, l);
      for (std::size_t l = 0; l < k; ++l) system(row, i * k + l) -= q(l, j);
    }
  }
  const Vector x = solve(system, Vector(std::vector<double>(g.entries().begin(), g.entries().end())));
  return Matrix(n, k, std::vector<double>(x.entries().begin(), x.entries().end()));
}

std::vector<double> max_abs_err(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) {
    throw DimensionError("max_abs_err: lengths " + std::to_string(u.size()) + " and " +
                         std::to_string(v.size()));
  }
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = std::abs(u[i] - v[i]);
  return out;
}

}  // namespace splitstep
