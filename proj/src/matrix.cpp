#include "meanlab/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>
#include <utility>

#include "meanlab/errors.hpp"

namespace meanlab {

Matrix::Matrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0.0) {
  if (dim < 1) throw InvalidInput("Matrix: dim must be >= 1");
}

Matrix::Matrix(int dim, std::vector<double> entries) : dim_(dim), a_(std::move(entries)) {
  if (dim < 1) throw InvalidInput("Matrix: dim must be >= 1");
  if (a_.size() != static_cast<std::size_t>(dim) * dim)
    throw InvalidInput("Matrix: entry count does not match dim^2");
}

Matrix Matrix::identity(int dim) {
  Matrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : a_) m = std::max(m, std::abs(x));
  return m;
}

double Matrix::fro_norm() const {
  double s = 0.0;
  for (double x : a_) s += x * x;
  return std::sqrt(s);
}

bool Matrix::is_finite() const {
  for (double x : a_)
    if (!std::isfinite(x)) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (dim_ != rhs.dim_) throw InvalidInput("Matrix +: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (dim_ != rhs.dim_) throw InvalidInput("Matrix -: dimension mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : a_) x *= s;
  return *this;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
Matrix operator*(double s, Matrix m) { return m *= s; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.dim() != rhs.dim()) throw InvalidInput("Matrix *: dimension mismatch");
  const int n = lhs.dim();
  Matrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double lik = lhs(i, k);
      if (lik == 0.0) continue;
      for (int j = 0; j < n; ++j) out(i, j) += lik * rhs(k, j);
    }
  }
  return out;
}

namespace {

void check_symmetric(const Matrix& m) {
  if (!m.is_finite()) throw InvalidInput("SymMatrix: non-finite entries");
  const double tol = 1e-12 * (1.0 + m.max_abs());
  const int n = m.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol)
        throw InvalidInput("SymMatrix: symmetry violated beyond tolerance");
}

}  // namespace

SymMatrix::SymMatrix(Matrix m) : Matrix(std::move(m)) { check_symmetric(*this); }

SymMatrix::SymMatrix(int dim, std::vector<double> entries) : Matrix(dim, std::move(entries)) {
  check_symmetric(*this);
}

SymMatrix SymMatrix::identity(int dim) { return SymMatrix(Matrix::identity(dim)); }

SymMatrix SymMatrix::diag(const std::vector<double>& d) {
  Matrix m(static_cast<int>(d.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
  return SymMatrix(std::move(m));
}

SymMatrix SymMatrix::symmetrized(const Matrix& m) {
  if (!m.is_finite()) throw InvalidInput("SymMatrix::symmetrized: non-finite entries");
  const int n = m.dim();
  Matrix out(n);
  for (int i = 0; i < n; ++i) {
    out(i, i) = m(i, i);
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  SymMatrix s;
  static_cast<Matrix&>(s) = std::move(out);
  return s;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < dim(); ++i) t += (*this)(i, i);
  return t;
}

SymMatrix operator+(const SymMatrix& lhs, const SymMatrix& rhs) {
  return SymMatrix::symmetrized(static_cast<const Matrix&>(lhs) + rhs);
}

SymMatrix operator-(const SymMatrix& lhs, const SymMatrix& rhs) {
  return SymMatrix::symmetrized(static_cast<const Matrix&>(lhs) - rhs);
}

SymMatrix operator*(double s, const SymMatrix& m) {
  return SymMatrix::symmetrized(s * static_cast<const Matrix&>(m));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("max_abs_diff: dimension mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
  for (int i = 0; i < m.dim(); ++i) {
    os << (i == 0 ? "[" : " ") << "[";
    for (int j = 0; j < m.dim(); ++j) os << (j ? ", " : "") << m(i, j);
    os << "]" << (i + 1 == m.dim() ? "]" : "\n");
  }
  return os;
}

}  // namespace meanlab
