#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meanlab/matrix.hpp"

namespace meanlab {

/// Solution of an inverse mean problem: SPD/PSD pair (A, B) together
/// with the max-norm reconstruction residuals of the two mean equations
/// and a tag naming the hypothesis that was used.
struct InverseSolution {
  SymMatrix a;
  SymMatrix b;
  double residual_x = 0.0;
  double residual_y = 0.0;
  std::string condition;
};

struct ChainLink {
  bool ratio_ok = false;
  std::optional<InverseSolution> solution;
};

/// Spectral-chain factorization X = Z_1 <= ... <= Z_M = Y with every
/// consecutive ratio bounded by gamma0. The proof's trailing majorant
/// gamma0^trailing_power * X >= Y is kept as metadata only.
struct ChainWitness {
  std::vector<SymMatrix> elements;
  double gamma0 = 0.0;
  std::vector<ChainLink> links;  // elements.size() - 1 entries
  long trailing_power = 0;
};

/// Given X <= Y, find SPD A, B with A # B = X and the Kubo-Ando power
/// mean P(p, A, B) = Y, 0 < p <= 1. Whitens by X^(1/2), inverts
/// h(a) = ((a^p + a^(-p))/2)^(1/p) per eigenvalue, and sets B0 = A0^(-1).
InverseSolution solve_geom_power(double p, const SymMatrix& x, const SymMatrix& y);

/// Given the ratio-banded pair (X <= Y <= gamma(r) X for r >= 1, or
/// gamma(r) X <= Y <= X for r <= 1), find SPD A, B with (A+B)/2 = X and
/// P(r, A, B) = Y. Per eigenvalue of the whitened Y this inverts
/// phi(a) = ((a^r + (2-a)^r)/2)^(1/r) on [1, 2] and sets B0 = 2I - A0.
InverseSolution solve_arith_power_local(double r, const SymMatrix& x, const SymMatrix& y);

/// Factor X <= Y into the proof's eigenprojection chain: all
/// not-yet-finalized eigendirections of the whitened Y scale by gamma0
/// one level at a time, each eigenvalue group finalizing to its own
/// value when its level is reached. Links carry ratio certificates;
/// solutions are left empty.
ChainWitness chain_decompose(const SymMatrix& x, const SymMatrix& y, double gamma0);

/// chain_decompose at gamma0 (default (1 + gamma(r))/2, r > 1 required)
/// with every link solved by solve_arith_power_local(r, ., .).
ChainWitness chain_solve_global(double r, const SymMatrix& x, const SymMatrix& y,
                                std::optional<double> gamma0 = std::nullopt);

/// Closed form for the p = 1/2 naive-mean system
///   ((A^(1/2)+B^(1/2))/2)^2 = X, (A+B)/2 = Y, valid for X <= Y < 2X:
///   A = (X^(1/2) + (Y-X)^(1/2))^2, B = (X^(1/2) - (Y-X)^(1/2))^2.
InverseSolution solve_sqrt_arith(const SymMatrix& x, const SymMatrix& y);

/// The quadratic-mean system (A+B)/2 = X, ((A^2+B^2)/2)^(1/2) = Y via
/// solve_sqrt_arith on (X^2, Y^2); requires X^2 <= Y^2 < 2 X^2. Inputs
/// beyond the sqrt(2) X^2 band still solve but are tagged as such.
InverseSolution solve_arith_quadratic(const SymMatrix& x, const SymMatrix& y);

/// chain_decompose with gamma0 = 1.5, each link solved by
/// solve_sqrt_arith.
ChainWitness chain_solve_sqrt(const SymMatrix& x, const SymMatrix& y);

/// Outcome of the numerical attempt at the general two-power system
/// ((A^p+B^p)/2)^(1/p) = X, ((A^q+B^q)/2)^(1/q) = Y. No existence claim:
/// `solved` is only reported with residual proof.
struct ExploreResult {
  bool solved = false;
  SymMatrix a;
  SymMatrix b;
  double residual_x = 0.0;
  double residual_y = 0.0;
  int iterations = 0;
  std::string method;  // "commuting-spectral" or "alternating"
};

ExploreResult explore_open_problem(double p, double q, const SymMatrix& x, const SymMatrix& y,
                                   int max_iters);

}  // namespace meanlab
