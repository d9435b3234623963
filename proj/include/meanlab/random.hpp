#pragma once

#include <cstdint>

#include "meanlab/matrix.hpp"

namespace meanlab {

/// SplitMix64 step, used to derive independent per-sample seeds from a
/// master seed so samples can run in any order (or in parallel) without
/// changing results.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Haar-ish random orthogonal matrix: QR (modified Gram-Schmidt, run
/// twice) of a Gaussian matrix, diagonal of R kept positive.
Matrix random_orthogonal(int dim, std::uint64_t seed);

/// Q diag(l) Q^T with l_i uniform in [lo, hi] and Q random orthogonal.
/// Deterministic per (dim, seed, lo, hi).
SymMatrix random_spd(int dim, std::uint64_t seed, double lo, double hi);

}  // namespace meanlab
