#include "meanlab/random.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "meanlab/errors.hpp"

namespace meanlab {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Matrix random_orthogonal(int dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidInput("random_orthogonal: dim must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Matrix g(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = gauss(rng);

  // Modified Gram-Schmidt over columns, repeated once for orthogonality
  // near machine precision.
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < j; ++k) {
        double dot = 0.0;
        for (int r = 0; r < dim; ++r) dot += g(r, k) * g(r, j);
        for (int r = 0; r < dim; ++r) g(r, j) -= dot * g(r, k);
      }
      double norm = 0.0;
      for (int r = 0; r < dim; ++r) norm += g(r, j) * g(r, j);
      norm = std::sqrt(norm);
      if (norm < 1e-12) {
        // Degenerate draw; replace with a unit basis vector and restart
        // the orthogonalization of this column.
        for (int r = 0; r < dim; ++r) g(r, j) = (r == j) ? 1.0 : 0.0;
        --j;
        continue;
      }
      for (int r = 0; r < dim; ++r) g(r, j) /= norm;
    }
  }
  // Sign convention: first entry of each column non-negative.
  for (int j = 0; j < dim; ++j) {
    if (g(0, j) < 0.0)
      for (int r = 0; r < dim; ++r) g(r, j) = -g(r, j);
  }
  return g;
}

SymMatrix random_spd(int dim, std::uint64_t seed, double lo, double hi) {
  if (dim < 1) throw InvalidInput("random_spd: dim must be >= 1");
  if (!(lo > 0.0)) throw InvalidInput("random_spd: lo must be > 0");
  if (!(hi >= lo)) throw InvalidInput("random_spd: need lo <= hi");

  const Matrix q = random_orthogonal(dim, mix_seed(seed, 0x51ul));
  std::mt19937_64 rng(mix_seed(seed, 0x52ul));
  std::uniform_real_distribution<double> unif(lo, hi);
  std::vector<double> lambda(static_cast<std::size_t>(dim));
  for (double& l : lambda) l = (lo == hi) ? lo : unif(rng);

  Matrix scaled(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) scaled(i, j) = q(i, j) * lambda[static_cast<std::size_t>(j)];
  return SymMatrix::symmetrized(scaled * q.transposed());
}

}  // namespace meanlab
