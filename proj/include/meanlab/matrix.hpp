#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace meanlab {

/// Dense square matrix, row-major double storage.
///
/// This is the workhorse for intermediate products (orthogonal factors,
/// congruences). Symmetric operands use SymMatrix below.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(int dim);  // zero-filled
  Matrix(int dim, std::vector<double> entries);

  static Matrix identity(int dim);

  int dim() const { return dim_; }
  double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

  const std::vector<double>& entries() const { return a_; }
  std::vector<double>& entries() { return a_; }

  Matrix transposed() const;
  double max_abs() const;
  double fro_norm() const;
  bool is_finite() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(double s);

 private:
  int dim_ = 0;
  std::vector<double> a_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(double s, Matrix m);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);  // matrix product

/// Real symmetric matrix. Construction validates the symmetry invariant
/// |a(i,j) - a(j,i)| <= 1e-12 * (1 + max_abs) and finiteness; use
/// symmetrized() to average an almost-symmetric product instead.
class SymMatrix : public Matrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(Matrix m);                     // validates, throws InvalidInput
  SymMatrix(int dim, std::vector<double> entries);  // same validation

  static SymMatrix identity(int dim);
  static SymMatrix diag(const std::vector<double>& d);
  /// (M + M^T)/2 without the symmetry check (still requires finite entries).
  static SymMatrix symmetrized(const Matrix& m);

  double trace() const;
};

SymMatrix operator+(const SymMatrix& lhs, const SymMatrix& rhs);
SymMatrix operator-(const SymMatrix& lhs, const SymMatrix& rhs);
SymMatrix operator*(double s, const SymMatrix& m);

/// max-norm distance, the tolerance currency used throughout.
double max_abs_diff(const Matrix& a, const Matrix& b);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

}  // namespace meanlab
