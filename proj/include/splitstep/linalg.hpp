#pragma once

// Dense real vectors and small matrices, plus the handful of kernels the
// splitting code needs: products, exponential, inverse, norms.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace splitstep {

class Vector {
 public:
  Vector() = default;
  explicit Vector(std::size_t len, double fill = 0.0);
  Vector(std::initializer_list<double> entries);
  explicit Vector(std::vector<double> entries);

  std::size_t size() const { return data_.size(); }
  double operator[](std::size_t i) const { return data_[i]; }
  double& operator[](std::size_t i) { return data_[i]; }

  std::span<const double> entries() const { return data_; }
  std::span<double> entries() { return data_; }

  double sum() const;
  double norm_inf() const;

  Vector& operator+=(const Vector& other);
  Vector& operator-=(const Vector& other);
  Vector& operator*=(double s);

  bool operator==(const Vector& other) const = default;

 private:
  std::vector<double> data_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator*(double s, Vector v);

/// Row-major dense matrix. Entries are checked for finiteness on construction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);
  static Matrix diagonal(std::initializer_list<double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const double> entries() const { return data_; }

  Matrix transpose() const;
  double max_abs() const;
  /// Maximum absolute row sum.
  double norm_inf() const;
  double norm_fro() const;

  /// Copy of the `nr`×`nc` block starting at (r0, c0).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& src);

  Matrix& operator+=(const Matrix& other);
  Matrix& operator-=(const Matrix& other);
  Matrix& operator*=(double s);

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(double s, Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Vector operator*(const Matrix& m, const Vector& v);

Matrix mat_mul(const Matrix& lhs, const Matrix& rhs);
Matrix mat_add(const Matrix& lhs, const Matrix& rhs);
Matrix mat_scale(const Matrix& m, double s);
Vector mat_apply(const Matrix& m, const Vector& v);

/// out += scale * m * v, without allocating. Used in the quadrature inner loops.
void apply_accumulate(const Matrix& m, std::span<const double> v, double scale,
                      std::span<double> out);

/// exp(t*M) by scaling and squaring with a diagonal Pade approximant.
Matrix expm(const Matrix& m, double t = 1.0);

/// Default relative pivot threshold used by `inverse`.
inline constexpr double kSingularRelTol = 1e-12;

/// Inverse by LU with partial pivoting. Throws SingularMatrix when a pivot
/// drops below `rel_tol * max_abs(M)`.
Matrix inverse(const Matrix& m, double rel_tol = kSingularRelTol);

/// Solves M x = b by LU with partial pivoting (same singularity rule as `inverse`).
Vector solve(const Matrix& m, const Vector& b, double rel_tol = kSingularRelTol);

/// Solves P X - X Q = G for X (Kronecker form). Throws SingularMatrix when
/// P and Q share an eigenvalue.
Matrix solve_sylvester(const Matrix& p, const Matrix& q, const Matrix& g);

/// Componentwise |u_j - v_j|.
std::vector<double> max_abs_err(const Vector& u, const Vector& v);

}  // namespace splitstep
