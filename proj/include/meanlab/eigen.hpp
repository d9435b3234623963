#pragma once

#include <utility>
#include <vector>

#include "meanlab/matrix.hpp"

namespace meanlab {

/// Spectral decomposition M = Q diag(lambdas) Q^T with Q orthogonal and
/// eigenvalues sorted in non-increasing order (eigenvectors are the
/// columns of Q, in matching order).
struct EigenDecomp {
  Matrix q;
  std::vector<double> lambdas;

  SymMatrix reconstruct() const;
  /// Q diag(vals) Q^T for caller-supplied diagonal values (functional
  /// calculus in this eigenbasis).
  SymMatrix reconstruct_with(const std::vector<double>& vals) const;
  std::vector<double> eigenvector(int i) const;  // i-th column of q
};

/// Cyclic Jacobi diagonalization of a real symmetric matrix. Sweeps until
/// the off-diagonal Frobenius mass drops below 1e-13 * ||M||_F, capped at
/// 64 sweeps. Deterministic for identical input bits.
EigenDecomp eig_sym(const SymMatrix& m);

/// Indices [first, last) of eigenvalue groups: consecutive sorted
/// eigenvalues within relative distance `rel_tol` belong to one group.
std::vector<std::pair<int, int>> eigen_groups(const std::vector<double>& lambdas,
                                              double rel_tol = 1e-9);

/// C M C^T, symmetrized. Throws IllConditioned when the condition
/// estimate of C exceeds 1e12.
SymMatrix congruence_transform(const Matrix& c, const SymMatrix& m);

}  // namespace meanlab
