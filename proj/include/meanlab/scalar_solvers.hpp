#pragma once

#include <vector>

namespace meanlab {

/// Root of a monotone scalar branch, with the achieved residual
/// |f(value) - target| and the iteration count spent.
struct BranchedRoot {
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// gamma(r) = 2^(1 - 1/r); > 1 iff r > 1, < 1 iff r < 1.
double gamma_of(double r);

/// Solve ((a^p + a^(-p))/2)^(1/p) = y for a on the branch a >= 1,
/// 0 < p <= 1, y >= 1. The mirrored root is 1/a.
BranchedRoot invert_h(double p, double y);

/// Solve ((a^r + (2-a)^r)/2)^(1/r) = x for a on the branch a in [1, 2].
/// For r >= 1 the reachable range is [1, gamma_of(r)]; for r <= 1 it is
/// [gamma_of(r), 1]. The mirrored root is 2 - a.
BranchedRoot invert_phi(double r, double x);

/// h_p evaluated on the a >= 1 branch (exposed for round-trip checks).
double h_of(double p, double a);

/// phi_r evaluated on [0, 2] (exposed for round-trip checks).
double phi_of(double r, double a);

/// Geometric bridging sequence x = s_0 <= s_1 <= ... <= s_K = y with
/// every ratio s_{k+1}/s_k <= gamma0 and K = ceil(log(y/x)/log(gamma0)).
std::vector<double> scalar_chain(double x, double y, double gamma0);

}  // namespace meanlab
