#pragma once

#include <vector>

#include "meanlab/matrix.hpp"

namespace meanlab {

/// Result of a Loewner-order test A <= B. On failure the witness fields
/// carry the offending eigenvalue of B - A and its unit eigenvector.
struct LoewnerResult {
  bool holds = false;
  double min_eigenvalue = 0.0;
  double threshold = 0.0;  // the -tol * (1 + ||A|| + ||B||) bound used
  std::vector<double> eigenvector;

  explicit operator bool() const { return holds; }
};

/// A <= B iff lambda_min(B - A) >= -tol * (1 + ||A||_max + ||B||_max).
LoewnerResult loewner_leq(const SymMatrix& a, const SymMatrix& b, double tol);

/// lambda_min(M) >= -1e-10 * (1 + ||M||_max): PSD up to roundoff.
bool is_psd_within_tol(const SymMatrix& m);

/// lambda_min(M) > 1e-10 * (1 + ||M||_max): strictly positive definite.
bool is_spd_within_tol(const SymMatrix& m);

double min_eigenvalue(const SymMatrix& m);

}  // namespace meanlab
