#include "meanlab/inverse_solvers.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "meanlab/eigen.hpp"
#include "meanlab/errors.hpp"
#include "meanlab/functional.hpp"
#include "meanlab/loewner.hpp"
#include "meanlab/means.hpp"
#include "meanlab/scalar_solvers.hpp"

namespace meanlab {

namespace {

constexpr double kOrderTol = 1e-9;
// Strict inequalities are enforced as a 1e-9 band below the bound; the
// band check itself runs at roundoff tolerance so it stays meaningful.
constexpr double kStrictBandTol = 1e-12;

struct Whitening {
  SymMatrix half;      // X^(1/2)
  SymMatrix inv_half;  // X^(-1/2)
  EigenDecomp y0_eig;  // eigensystem of X^(-1/2) Y X^(-1/2)
};

Whitening whiten(const SymMatrix& x, const SymMatrix& y, const char* who) {
  if (x.dim() != y.dim()) throw InvalidInput(std::string(who) + ": dimension mismatch");
  const EigenDecomp ex = eig_sym(x);
  const double eps_p = 1e-10 * (1.0 + x.max_abs());
  if (!(ex.lambdas.back() > eps_p))
    throw DomainError(std::string(who) + ": X is not positive definite within tolerance");

  Whitening w;
  std::vector<double> sq(ex.lambdas.size()), isq(ex.lambdas.size());
  for (std::size_t i = 0; i < sq.size(); ++i) {
    sq[i] = std::sqrt(ex.lambdas[i]);
    isq[i] = 1.0 / sq[i];
  }
  w.half = ex.reconstruct_with(sq);
  w.inv_half = ex.reconstruct_with(isq);
  w.y0_eig = eig_sym(SymMatrix::symmetrized(w.inv_half * y * w.inv_half));
  return w;
}

SymMatrix congruence_back(const SymMatrix& half, const EigenDecomp& basis,
                          const std::vector<double>& diag_vals) {
  return SymMatrix::symmetrized(half * basis.reconstruct_with(diag_vals) * half);
}

double rel_scale(const SymMatrix& x, const SymMatrix& y) {
  return 1.0 + x.max_abs() + y.max_abs();
}

}  // namespace

InverseSolution solve_geom_power(double p, const SymMatrix& x, const SymMatrix& y) {
  if (!(p > 0.0) || !(p <= 1.0)) throw InvalidInput("solve_geom_power: p must lie in (0, 1]");
  if (!loewner_leq(x, y, kOrderTol))
    throw HypothesisViolated("solve_geom_power: X <= Y fails");

  const Whitening w = whiten(x, y, "solve_geom_power");
  const std::size_t n = w.y0_eig.lambdas.size();
  std::vector<double> a_vals(n), b_vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = std::max(w.y0_eig.lambdas[i], 1.0);
    const double a = invert_h(p, lam).value;
    a_vals[i] = a;
    b_vals[i] = 1.0 / a;
  }

  InverseSolution sol;
  sol.a = congruence_back(w.half, w.y0_eig, a_vals);
  sol.b = congruence_back(w.half, w.y0_eig, b_vals);
  sol.condition = "X<=Y";
  sol.residual_x = max_abs_diff(matrix_mean(MeanSpec::geometric(), sol.a, sol.b), x);
  sol.residual_y = max_abs_diff(matrix_mean(MeanSpec::kubo_ando_power(p), sol.a, sol.b), y);
  return sol;
}

InverseSolution solve_arith_power_local(double r, const SymMatrix& x, const SymMatrix& y) {
  if (!(r > 0.0)) throw InvalidInput("solve_arith_power_local: r must be > 0");

  const double gamma = gamma_of(r);
  // The band degenerates at r = 1 (gamma = 1), where only Y ~ X is feasible.
  if (r >= 1.0) {
    const bool upper_ok = (r == 1.0) ? loewner_leq(y, x, kOrderTol).holds
                                     : loewner_leq(y, (gamma - 1e-9) * x, kStrictBandTol).holds;
    if (!loewner_leq(x, y, kOrderTol) || !upper_ok)
      throw HypothesisViolated("solve_arith_power_local: need X <= Y <= gamma(r) X (strict)");
  } else {
    if (!loewner_leq((gamma + 1e-9) * x, y, kStrictBandTol) || !loewner_leq(y, x, kOrderTol))
      throw HypothesisViolated("solve_arith_power_local: need gamma(r) X <= Y <= X (strict)");
  }

  const Whitening w = whiten(x, y, "solve_arith_power_local");
  const std::size_t n = w.y0_eig.lambdas.size();
  const double lo = std::min(1.0, gamma);
  const double hi = std::max(1.0, gamma);
  std::vector<double> a_vals(n), b_vals(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lam = std::clamp(w.y0_eig.lambdas[i], lo, hi);
    const double delta = invert_phi(r, lam).value;
    a_vals[i] = delta;
    b_vals[i] = 2.0 - delta;
  }

  InverseSolution sol;
  sol.a = congruence_back(w.half, w.y0_eig, a_vals);
  sol.b = congruence_back(w.half, w.y0_eig, b_vals);
  sol.condition = (r >= 1.0) ? "X<=Y<gamma(r)X" : "gamma(r)X<Y<=X";
  sol.residual_x = max_abs_diff(matrix_mean(MeanSpec::arithmetic(), sol.a, sol.b), x);
  sol.residual_y = max_abs_diff(matrix_mean(MeanSpec::kubo_ando_power(r), sol.a, sol.b), y);
  return sol;
}

ChainWitness chain_decompose(const SymMatrix& x, const SymMatrix& y, double gamma0) {
  if (!(gamma0 > 1.0 + 1e-9)) throw InvalidInput("chain_decompose: gamma0 must exceed 1");
  if (!loewner_leq(x, y, kOrderTol)) throw HypothesisViolated("chain_decompose: X <= Y fails");

  const Whitening w = whiten(x, y, "chain_decompose");
  const int n = static_cast<int>(w.y0_eig.lambdas.size());
  std::vector<double> lam(w.y0_eig.lambdas);
  for (double& l : lam) l = std::max(l, 1.0);

  // Per-group integer levels m with gamma0^m < lambda <= gamma0^(m+1);
  // the 1e-12 guard parks exact powers in the closed upper end. Grouping
  // near-equal eigenvalues first keeps multiplicities stable.
  const double log_g = std::log(gamma0);
  std::vector<long> level(static_cast<std::size_t>(n));
  for (const auto& [first, last] : eigen_groups(lam)) {
    const double rep = lam[static_cast<std::size_t>(first)];
    long m = static_cast<long>(std::ceil(std::log(rep) / log_g - 1e-12)) - 1;
    if (m < -1) m = -1;
    for (int i = first; i < last; ++i) level[static_cast<std::size_t>(i)] = m;
  }

  ChainWitness cw;
  cw.gamma0 = gamma0;
  cw.trailing_power = *std::max_element(level.begin(), level.end()) + 1;
  cw.elements.push_back(x);

  std::map<long, std::vector<int>> finalize_at;
  int active = 0;
  for (int i = 0; i < n; ++i) {
    if (level[static_cast<std::size_t>(i)] >= 0) {
      finalize_at[level[static_cast<std::size_t>(i)]].push_back(i);
      ++active;
    }
  }

  std::vector<double> v(static_cast<std::size_t>(n), 1.0);
  std::vector<bool> done(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) done[static_cast<std::size_t>(i)] = level[static_cast<std::size_t>(i)] < 0;

  for (long c = 0; active > 0; ++c) {
    if (auto it = finalize_at.find(c); it != finalize_at.end()) {
      for (int i : it->second) {
        v[static_cast<std::size_t>(i)] = lam[static_cast<std::size_t>(i)];
        done[static_cast<std::size_t>(i)] = true;
        --active;
      }
      cw.elements.push_back(active == 0 ? y : congruence_back(w.half, w.y0_eig, v));
    }
    if (active > 0) {
      for (int i = 0; i < n; ++i)
        if (!done[static_cast<std::size_t>(i)]) v[static_cast<std::size_t>(i)] *= gamma0;
      cw.elements.push_back(congruence_back(w.half, w.y0_eig, v));
    }
  }

  cw.links.resize(cw.elements.size() - 1);
  for (std::size_t k = 0; k + 1 < cw.elements.size(); ++k) {
    const SymMatrix& zk = cw.elements[k];
    const SymMatrix& zk1 = cw.elements[k + 1];
    cw.links[k].ratio_ok =
        loewner_leq(zk, zk1, kOrderTol).holds && loewner_leq(zk1, gamma0 * zk, kOrderTol).holds;
  }
  return cw;
}

ChainWitness chain_solve_global(double r, const SymMatrix& x, const SymMatrix& y,
                                std::optional<double> gamma0) {
  if (!(r > 1.0)) throw InvalidInput("chain_solve_global: r must be > 1");
  const double gamma = gamma_of(r);
  const double g0 = gamma0.value_or(0.5 * (1.0 + gamma));
  if (!(g0 > 1.0 + 1e-9) || !(g0 < gamma))
    throw InvalidInput("chain_solve_global: gamma0 must lie in (1, gamma(r))");

  ChainWitness cw = chain_decompose(x, y, g0);
  for (std::size_t k = 0; k + 1 < cw.elements.size(); ++k)
    cw.links[k].solution = solve_arith_power_local(r, cw.elements[k], cw.elements[k + 1]);
  return cw;
}

InverseSolution solve_sqrt_arith(const SymMatrix& x, const SymMatrix& y) {
  if (x.dim() != y.dim()) throw InvalidInput("solve_sqrt_arith: dimension mismatch");
  if (!is_psd_within_tol(x)) throw DomainError("solve_sqrt_arith: X is not PSD");
  if (!loewner_leq(x, y, kOrderTol)) throw HypothesisViolated("solve_sqrt_arith: X <= Y fails");
  if (!loewner_leq(y, (2.0 - 1e-9) * x, kStrictBandTol))
    throw HypothesisViolated("solve_sqrt_arith: Y < 2X fails");

  const SymMatrix xh = sqrt_psd(clamp_psd(x));
  const SymMatrix dh = sqrt_psd(clamp_psd(y - x));
  const Matrix sum = static_cast<const Matrix&>(xh) + dh;
  const Matrix dif = static_cast<const Matrix&>(xh) - dh;

  InverseSolution sol;
  sol.a = SymMatrix::symmetrized(sum * sum);
  sol.b = SymMatrix::symmetrized(dif * dif);
  sol.condition = "X<=Y<2X";

  // Y - X <= X makes X^(1/2) - (Y-X)^(1/2) PSD (square root is operator
  // monotone), so the principal root of B must reproduce it.
  const SymMatrix b_root = sqrt_psd(clamp_psd(sol.b));
  if (max_abs_diff(b_root, SymMatrix::symmetrized(dif)) > 1e-7 * rel_scale(x, y))
    throw NumericalFailure("solve_sqrt_arith: B^(1/2) consistency check failed");

  const SymMatrix a_root = sqrt_psd(clamp_psd(sol.a));
  const Matrix mean_root = 0.5 * (static_cast<const Matrix&>(a_root) + b_root);
  sol.residual_x = max_abs_diff(SymMatrix::symmetrized(mean_root * mean_root), x);
  sol.residual_y = max_abs_diff(0.5 * (sol.a + sol.b), y);
  return sol;
}

InverseSolution solve_arith_quadratic(const SymMatrix& x, const SymMatrix& y) {
  if (x.dim() != y.dim()) throw InvalidInput("solve_arith_quadratic: dimension mismatch");
  const SymMatrix x2 = SymMatrix::symmetrized(static_cast<const Matrix&>(x) * x);
  const SymMatrix y2 = SymMatrix::symmetrized(static_cast<const Matrix&>(y) * y);

  InverseSolution squares;
  try {
    squares = solve_sqrt_arith(x2, y2);
  } catch (const HypothesisViolated&) {
    throw HypothesisViolated("solve_arith_quadratic: need X^2 <= Y^2 < 2 X^2");
  }

  InverseSolution sol;
  sol.a = sqrt_psd(clamp_psd(squares.a));
  sol.b = sqrt_psd(clamp_psd(squares.b));
  // The stated band is sqrt(2) X^2; anything up to the 2 X^2 band of the
  // underlying construction still solves, but gets flagged.
  sol.condition = loewner_leq(y2, std::sqrt(2.0) * x2, kOrderTol)
                      ? "X^2<=Y^2<=sqrt(2)X^2"
                      : "X^2<=Y^2<2X^2 (beyond sqrt(2) band)";
  sol.residual_x = max_abs_diff(0.5 * (sol.a + sol.b), x);
  const SymMatrix asq = SymMatrix::symmetrized(static_cast<const Matrix&>(sol.a) * sol.a);
  const SymMatrix bsq = SymMatrix::symmetrized(static_cast<const Matrix&>(sol.b) * sol.b);
  sol.residual_y = max_abs_diff(sqrt_psd(clamp_psd(0.5 * (asq + bsq))), y);
  return sol;
}

ChainWitness chain_solve_sqrt(const SymMatrix& x, const SymMatrix& y) {
  ChainWitness cw = chain_decompose(x, y, 1.5);
  for (std::size_t k = 0; k + 1 < cw.elements.size(); ++k)
    cw.links[k].solution = solve_sqrt_arith(cw.elements[k], cw.elements[k + 1]);
  return cw;
}

namespace {

// ((A^p + B^p)/2)^(1/p) for PSD operands (functional-calculus route).
SymMatrix naive_mean_psd(double p, const SymMatrix& a, const SymMatrix& b) {
  const SymMatrix ap = apply_fun(clamp_psd(a), ScalarFunction::power(p));
  const SymMatrix bp = apply_fun(clamp_psd(b), ScalarFunction::power(p));
  return apply_fun(clamp_psd(0.5 * (ap + bp)), ScalarFunction::power(1.0 / p));
}

// Scalar two-power system mu_p(a,b) = x, mu_q(a,b) = y on the a >= b
// branch: b is eliminated through the p-equation and the q-equation is
// bisected in a. Feasible only for x <= y < 2^(1/p - 1/q) x.
std::optional<std::pair<double, double>> solve_scalar_two_power(double p, double q, double x,
                                                                double y) {
  if (!(x > 0.0) || y < x * (1.0 - 1e-12)) return std::nullopt;
  const auto eliminate_b = [p, x](double a) {
    const double rest = 2.0 * std::pow(x, p) - std::pow(a, p);
    return (rest <= 0.0) ? 0.0 : std::pow(rest, 1.0 / p);
  };
  const auto q_mean = [p, q, x, eliminate_b](double a) {
    const double b = eliminate_b(a);
    if (b <= 0.0) return std::pow(0.5 * std::pow(a, q), 1.0 / q);
    return scalar_power_mean(q, a, b);
  };

  const double a_sup = std::pow(2.0, 1.0 / p) * x;
  double lo = x, hi = a_sup * (1.0 - 1e-13);
  if (q_mean(hi) < y) return std::nullopt;  // y beyond the reachable band
  if (y <= x * (1.0 + 1e-15)) return std::make_pair(x, x);
  for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    if (q_mean(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  const double a = 0.5 * (lo + hi);
  return std::make_pair(a, eliminate_b(a));
}

}  // namespace

ExploreResult explore_open_problem(double p, double q, const SymMatrix& x, const SymMatrix& y,
                                   int max_iters) {
  if (!(p >= 0.5 - 1e-12) || !(p <= 1.0 + 1e-12))
    throw InvalidInput("explore_open_problem: p must lie in [1/2, 1]");
  if (!(q >= 1.0 - 1e-12)) throw InvalidInput("explore_open_problem: q must be >= 1");
  if (max_iters < 1) throw InvalidInput("explore_open_problem: max_iters must be >= 1");
  if (x.dim() != y.dim()) throw InvalidInput("explore_open_problem: dimension mismatch");
  if (!is_spd_within_tol(x) || !is_spd_within_tol(y))
    throw InvalidInput("explore_open_problem: X, Y must be SPD");
  if (!loewner_leq(x, y, kOrderTol)) throw InvalidInput("explore_open_problem: X <= Y fails");

  const double accept = 1e-8 * rel_scale(x, y);
  ExploreResult res;

  const auto finish = [&](const SymMatrix& a, const SymMatrix& b, int iters,
                          const char* method) {
    res.a = a;
    res.b = b;
    res.iterations = iters;
    res.method = method;
    res.residual_x = max_abs_diff(naive_mean_psd(p, a, b), x);
    res.residual_y = max_abs_diff(naive_mean_psd(q, a, b), y);
    res.solved = res.residual_x < accept && res.residual_y < accept;
  };

  // Commuting inputs reduce to one scalar system per shared eigendirection.
  const Matrix xy = static_cast<const Matrix&>(x) * y;
  const double commute_gap = max_abs_diff(xy, xy.transposed());
  if (commute_gap <= 1e-10 * (1.0 + x.max_abs()) * (1.0 + y.max_abs())) {
    const SymMatrix blend =
        SymMatrix::symmetrized((1.0 / (1.0 + x.max_abs())) * static_cast<const Matrix&>(x) +
                               (0.618033988749894903 / (1.0 + y.max_abs())) * y);
    const EigenDecomp basis = eig_sym(blend);
    const int n = x.dim();
    Matrix xt = basis.q.transposed() * x * basis.q;
    Matrix yt = basis.q.transposed() * y * basis.q;
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) off = std::max(off, std::max(std::abs(xt(i, j)), std::abs(yt(i, j))));

    if (off <= 1e-8 * (1.0 + x.max_abs() + y.max_abs())) {
      std::vector<double> av(static_cast<std::size_t>(n)), bv(static_cast<std::size_t>(n));
      bool feasible = true;
      for (int i = 0; i < n && feasible; ++i) {
        const auto ab = solve_scalar_two_power(p, q, xt(i, i), yt(i, i));
        if (!ab) {
          feasible = false;
        } else {
          av[static_cast<std::size_t>(i)] = ab->first;
          bv[static_cast<std::size_t>(i)] = ab->second;
        }
      }
      if (feasible) {
        finish(basis.reconstruct_with(av), basis.reconstruct_with(bv), 1, "commuting-spectral");
        if (res.solved) return res;
      }
    }
  }

  // Non-commuting (or infeasible-commuting) inputs: alternating update.
  // The B-step enforces the p-equation, the rescale matches the trace of
  // the q-equation; A only ever changes by the global scale.
  const SymMatrix xp = apply_fun(x, ScalarFunction::power(p));
  SymMatrix a = x;
  SymMatrix b = x;
  int iters = 0;
  for (int k = 0; k < max_iters; ++k) {
    iters = k + 1;
    const SymMatrix ap = apply_fun(clamp_psd(a), ScalarFunction::power(p));
    b = apply_fun(clamp_psd(2.0 * xp - ap), ScalarFunction::power(1.0 / p));
    const SymMatrix mq = naive_mean_psd(q, a, b);
    const double tq = mq.trace();
    if (!(tq > 0.0)) break;
    const double s = y.trace() / tq;
    a = s * a;
    b = s * b;
    const double r1 = max_abs_diff(naive_mean_psd(p, a, b), x);
    const double r2 = max_abs_diff(naive_mean_psd(q, a, b), y);
    if (r1 < accept && r2 < accept) break;
  }
  finish(a, b, iters, "alternating");
  return res;
}

}  // namespace meanlab
