#include "meanlab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "meanlab/errors.hpp"

namespace meanlab {

SymMatrix EigenDecomp::reconstruct() const { return reconstruct_with(lambdas); }

SymMatrix EigenDecomp::reconstruct_with(const std::vector<double>& vals) const {
  const int n = q.dim();
  if (vals.size() != static_cast<std::size_t>(n))
    throw InvalidInput("reconstruct_with: value count does not match dimension");
  Matrix scaled(n);  // Q * diag(vals)
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) scaled(i, j) = q(i, j) * vals[static_cast<std::size_t>(j)];
  return SymMatrix::symmetrized(scaled * q.transposed());
}

std::vector<double> EigenDecomp::eigenvector(int i) const {
  std::vector<double> v(static_cast<std::size_t>(q.dim()));
  for (int r = 0; r < q.dim(); ++r) v[static_cast<std::size_t>(r)] = q(r, i);
  return v;
}

namespace {

double offdiag_fro(const Matrix& a) {
  double s = 0.0;
  const int n = a.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomp eig_sym(const SymMatrix& m) {
  if (!m.is_finite()) throw InvalidInput("eig_sym: non-finite entries");
  const int n = m.dim();
  Matrix a = m;
  Matrix v = Matrix::identity(n);

  const double stop = 1e-13 * m.fro_norm();
  constexpr int kMaxSweeps = 64;

  for (int sweep = 0; sweep < kMaxSweeps && n > 1; ++sweep) {
    if (offdiag_fro(a) <= stop) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = 0.5 * (aqq - app) / apq;
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;  // sqrt(theta^2+1) would overflow
        } else {
          t = ((theta >= 0.0) ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p);
            const double arq = a(r, q);
            a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
            a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
          }
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) > a(j, j); });

  EigenDecomp out;
  out.q = Matrix(n);
  out.lambdas.resize(static_cast<std::size_t>(n));
  for (int col = 0; col < n; ++col) {
    const int src = order[static_cast<std::size_t>(col)];
    out.lambdas[static_cast<std::size_t>(col)] = a(src, src);
    // Fix the column sign so identical inputs give bit-identical output.
    int pivot = 0;
    double best = 0.0;
    for (int r = 0; r < n; ++r) {
      if (std::abs(v(r, src)) > best) {
        best = std::abs(v(r, src));
        pivot = r;
      }
    }
    const double flip = (v(pivot, src) < 0.0) ? -1.0 : 1.0;
    for (int r = 0; r < n; ++r) out.q(r, col) = flip * v(r, src);
  }
  return out;
}

std::vector<std::pair<int, int>> eigen_groups(const std::vector<double>& lambdas, double rel_tol) {
  std::vector<std::pair<int, int>> groups;
  const int n = static_cast<int>(lambdas.size());
  int start = 0;
  for (int i = 1; i <= n; ++i) {
    bool split = (i == n);
    if (!split) {
      const double a = lambdas[static_cast<std::size_t>(i - 1)];
      const double b = lambdas[static_cast<std::size_t>(i)];
      split = std::abs(a - b) > rel_tol * (1.0 + std::max(std::abs(a), std::abs(b)));
    }
    if (split) {
      groups.emplace_back(start, i);
      start = i;
    }
  }
  return groups;
}

SymMatrix congruence_transform(const Matrix& c, const SymMatrix& m) {
  if (c.dim() != m.dim()) throw InvalidInput("congruence_transform: dimension mismatch");
  if (!c.is_finite()) throw InvalidInput("congruence_transform: non-finite entries");

  // cond_2(C)^2 = cond(C^T C); C^T C is symmetric PSD.
  const SymMatrix gram = SymMatrix::symmetrized(c.transposed() * c);
  const EigenDecomp ed = eig_sym(gram);
  const double smax = ed.lambdas.front();
  const double smin = ed.lambdas.back();
  if (!(smin > 0.0) || std::sqrt(smax / smin) > 1e12)
    throw IllConditioned("congruence_transform: condition estimate above 1e12");

  return SymMatrix::symmetrized(c * m * c.transposed());
}

}  // namespace meanlab
