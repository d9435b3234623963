#include "meanlab/scalar_solvers.hpp"

#include <cmath>

#include "meanlab/errors.hpp"
#include "meanlab/functional.hpp"

namespace meanlab {

double gamma_of(double r) {
  if (!(r > 0.0)) throw InvalidInput("gamma_of: r must be > 0");
  return std::exp2(1.0 - 1.0 / r);
}

double h_of(double p, double a) {
  // ((a^p + a^(-p))/2)^(1/p) = a * f_p(a^(-2))
  const double t = 1.0 / (a * a);
  if (t == 0.0) return a * std::pow(0.5, 1.0 / p);  // a^(-2) underflowed
  return a * representing_function_value(p, t);
}

double phi_of(double r, double a) {
  if (!(r > 0.0)) throw InvalidInput("phi_of: r must be > 0");
  if (a < 0.0 || a > 2.0) throw InvalidInput("phi_of: a must lie in [0, 2]");
  return std::pow(0.5 * (std::pow(a, r) + std::pow(2.0 - a, r)), 1.0 / r);
}

namespace {

constexpr double kEndpointSlack = 1e-12;

// Bracketing bisection on a monotone branch down to relative width
// 1e-13, then up to 3 Newton polish steps clamped inside the final
// bracket. `fn` must be monotone between the bracket ends; `deriv` may
// return 0 to skip the polish.
template <typename Fn, typename Deriv>
BranchedRoot bisect_newton(Fn fn, Deriv deriv, double lo, double hi, double target) {
  BranchedRoot root;
  double flo = fn(lo) - target;
  double fhi = fn(hi) - target;

  if (flo == 0.0 || fhi == 0.0) {
    root.value = (flo == 0.0) ? lo : hi;
    root.residual = 0.0;
    return root;
  }
  const bool increasing = fhi > flo;

  for (int it = 0; it < 200; ++it) {
    if (hi - lo <= 1e-13 * std::max(1.0, std::abs(hi))) break;
    const double mid = 0.5 * (lo + hi);
    const double fmid = fn(mid) - target;
    ++root.iterations;
    if (fmid == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((fmid < 0.0) == increasing)
      lo = mid;
    else
      hi = mid;
  }

  double a = 0.5 * (lo + hi);
  double res = std::abs(fn(a) - target);
  for (int polish = 0; polish < 3; ++polish) {
    const double d = deriv(a);
    if (d == 0.0 || !std::isfinite(d)) break;
    double next = a - (fn(a) - target) / d;
    next = std::min(std::max(next, lo), hi);
    const double next_res = std::abs(fn(next) - target);
    ++root.iterations;
    if (next_res < res) {
      a = next;
      res = next_res;
    } else {
      break;
    }
  }
  root.value = a;
  root.residual = res;
  return root;
}

}  // namespace

BranchedRoot invert_h(double p, double y) {
  if (!(p > 0.0) || !(p <= 1.0)) throw InvalidInput("invert_h: p must lie in (0, 1]");
  if (!std::isfinite(y)) throw InvalidInput("invert_h: y must be finite");
  if (y < 1.0 - kEndpointSlack) throw OutOfRange("invert_h: y below 1");
  if (y <= 1.0) return BranchedRoot{1.0, std::abs(h_of(p, 1.0) - y), 0};

  const auto h = [p](double a) { return h_of(p, a); };
  const auto dh = [p](double a) {
    // d/da ((a^p + a^(-p))/2)^(1/p) = (a^(p-1) - a^(-p-1)) / (2 h^(p-1))
    const double hv = h_of(p, a);
    return (std::pow(a, p - 1.0) - std::pow(a, -p - 1.0)) / (2.0 * std::pow(hv, p - 1.0));
  };

  double hi = 2.0;
  int grow = 0;
  while (h(hi) < y) {
    hi *= 2.0;
    if (++grow > 900 || hi > 1e290)
      throw NumericalFailure("invert_h: bracket growth failed");
  }
  auto root = bisect_newton(h, dh, 1.0, hi, y);
  root.iterations += grow;
  return root;
}

BranchedRoot invert_phi(double r, double x) {
  if (!(r > 0.0)) throw InvalidInput("invert_phi: r must be > 0");
  if (!std::isfinite(x)) throw InvalidInput("invert_phi: x must be finite");

  const double gamma = gamma_of(r);
  const double lo_val = std::min(1.0, gamma);
  const double hi_val = std::max(1.0, gamma);
  if (x < lo_val - kEndpointSlack || x > hi_val + kEndpointSlack)
    throw OutOfRange("invert_phi: x outside the reachable range of the branch");

  // phi(1) = 1 and phi(2) = gamma on the chosen branch; r = 1 makes phi
  // constant, so only x = 1 is admissible there.
  if (std::abs(x - 1.0) <= kEndpointSlack) return BranchedRoot{1.0, std::abs(1.0 - x), 0};
  if (std::abs(x - gamma) <= kEndpointSlack)
    return BranchedRoot{2.0, std::abs(phi_of(r, 2.0) - x), 0};

  const auto phi = [r](double a) { return phi_of(r, a); };
  const auto dphi = [r](double a) {
    if (a >= 2.0 - 1e-12 || a <= 1e-12) return 0.0;  // endpoint slope may blow up for r < 1
    const double pv = phi_of(r, a);
    return (std::pow(a, r - 1.0) - std::pow(2.0 - a, r - 1.0)) / (2.0 * std::pow(pv, r - 1.0));
  };
  return bisect_newton(phi, dphi, 1.0, 2.0, x);
}

std::vector<double> scalar_chain(double x, double y, double gamma0) {
  if (!(x > 0.0)) throw InvalidInput("scalar_chain: x must be > 0");
  if (!(y >= x)) throw InvalidInput("scalar_chain: need x <= y");
  if (!(gamma0 > 1.0)) throw InvalidInput("scalar_chain: gamma0 must be > 1");

  if (y == x) return {x};
  const double steps = std::log(y / x) / std::log(gamma0);
  const int k = static_cast<int>(std::ceil(steps - 1e-12));

  std::vector<double> chain;
  chain.reserve(static_cast<std::size_t>(k) + 1);
  chain.push_back(x);
  double s = x;
  for (int i = 1; i < k; ++i) {
    s *= gamma0;
    chain.push_back(s);
  }
  chain.push_back(y);
  return chain;
}

}  // namespace meanlab
