#pragma once

// Shared generators for hypothesis-satisfying solver instances.

#include <cstdint>

#include "meanlab/functional.hpp"
#include "meanlab/matrix.hpp"
#include "meanlab/random.hpp"

namespace testsupport {

struct XYPair {
  meanlab::SymMatrix x;
  meanlab::SymMatrix y;
};

/// X <= Y with the whitened spectrum of X^(-1/2) Y X^(-1/2) drawn from
/// [ratio_lo, ratio_hi]; ratio_lo >= 1 guarantees the order.
inline XYPair ordered_pair(int dim, std::uint64_t seed, double ratio_lo, double ratio_hi,
                           double x_lo = 0.5, double x_hi = 2.0) {
  using namespace meanlab;
  const SymMatrix x = random_spd(dim, mix_seed(seed, 1), x_lo, x_hi);
  const SymMatrix w = random_spd(dim, mix_seed(seed, 2), ratio_lo, ratio_hi);
  const SymMatrix xh = sqrt_psd(x);
  const SymMatrix y = SymMatrix::symmetrized(xh * w * xh);
  return {x, y};
}

/// Pair with X^2 <= Y^2 <= ratio_hi * X^2 (for the quadratic-mean solver).
inline XYPair squared_ordered_pair(int dim, std::uint64_t seed, double ratio_lo,
                                   double ratio_hi) {
  using namespace meanlab;
  const SymMatrix x = random_spd(dim, mix_seed(seed, 5), 0.5, 2.0);
  const SymMatrix x2 = SymMatrix::symmetrized(static_cast<const Matrix&>(x) * x);
  const SymMatrix w = random_spd(dim, mix_seed(seed, 6), ratio_lo, ratio_hi);
  const SymMatrix y2 = SymMatrix::symmetrized(x * w * x);  // x = sqrt(x2)
  return {x, sqrt_psd(y2)};
}

}  // namespace testsupport
