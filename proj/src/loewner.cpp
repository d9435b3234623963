#include "meanlab/loewner.hpp"

#include "meanlab/eigen.hpp"
#include "meanlab/errors.hpp"

namespace meanlab {

LoewnerResult loewner_leq(const SymMatrix& a, const SymMatrix& b, double tol) {
  if (a.dim() != b.dim()) throw InvalidInput("loewner_leq: dimension mismatch");
  if (tol < 0.0) throw InvalidInput("loewner_leq: tol must be >= 0");

  const SymMatrix diff = b - a;
  const EigenDecomp ed = eig_sym(diff);
  const int last = diff.dim() - 1;

  LoewnerResult res;
  res.min_eigenvalue = ed.lambdas.back();
  res.threshold = -tol * (1.0 + a.max_abs() + b.max_abs());
  res.holds = res.min_eigenvalue >= res.threshold;
  if (!res.holds) res.eigenvector = ed.eigenvector(last);
  return res;
}

double min_eigenvalue(const SymMatrix& m) { return eig_sym(m).lambdas.back(); }

bool is_psd_within_tol(const SymMatrix& m) {
  return min_eigenvalue(m) >= -1e-10 * (1.0 + m.max_abs());
}

bool is_spd_within_tol(const SymMatrix& m) {
  return min_eigenvalue(m) > 1e-10 * (1.0 + m.max_abs());
}

}  // namespace meanlab
