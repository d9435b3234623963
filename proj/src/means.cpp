#include "meanlab/means.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "meanlab/eigen.hpp"
#include "meanlab/errors.hpp"
#include "meanlab/functional.hpp"

namespace meanlab {

MeanSpec MeanSpec::kubo_ando_power(double p) {
  if (!std::isfinite(p) || p < 0.0)
    throw InvalidInput("KuboAndoPower: p must be finite and >= 0");
  return MeanSpec(Kind::KuboAndoPower, p);
}

MeanSpec MeanSpec::naive_power(double p) {
  // Small p is excluded: A^p conditioning degrades and the Kubo-Ando
  // form covers that regime.
  if (!std::isfinite(p) || p < 1e-3)
    throw InvalidInput("NaivePower: p must be >= 1e-3");
  return MeanSpec(Kind::NaivePower, p);
}

std::string MeanSpec::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::KuboAndoPower:
      os << "kubo-ando-power:" << param_;
      break;
    case Kind::NaivePower:
      os << "naive-power:" << param_;
      break;
    case Kind::Geometric:
      os << "geometric";
      break;
    case Kind::Arithmetic:
      os << "arithmetic";
      break;
    case Kind::MinMean:
      os << "min";
      break;
  }
  return os.str();
}

double scalar_power_mean(double p, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw InvalidInput("scalar_power_mean: a, b must be > 0");
  if (p == 0.0) return std::sqrt(a * b);
  return b * representing_function_value(p, a / b);
}

double representing_function(double p, double t) {
  if (!(t > 0.0)) throw InvalidInput("representing_function: t must be > 0");
  return representing_function_value(p, t);
}

namespace {

struct SpdEig {
  EigenDecomp ed;
  double eps_p;
};

SpdEig eig_spd_checked(const SymMatrix& m, const char* who) {
  if (!m.is_finite()) throw InvalidInput(std::string(who) + ": non-finite entries");
  SpdEig out{eig_sym(m), 1e-10 * (1.0 + m.max_abs())};
  if (!(out.ed.lambdas.back() > out.eps_p))
    throw DomainError(std::string(who) + ": input is not positive definite within tolerance");
  return out;
}

std::vector<double> powers(const std::vector<double>& lambdas, double r) {
  std::vector<double> out(lambdas.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::pow(lambdas[i], r);
  return out;
}

}  // namespace

SymMatrix matrix_mean(const MeanSpec& spec, const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidInput("matrix_mean: dimension mismatch");
  const SpdEig ea = eig_spd_checked(a, "matrix_mean(A)");
  const SpdEig eb = eig_spd_checked(b, "matrix_mean(B)");

  switch (spec.kind()) {
    case MeanSpec::Kind::Arithmetic:
      return 0.5 * (a + b);

    case MeanSpec::Kind::MinMean:
      return 0.5 * SymMatrix::symmetrized((a + b) - matrix_abs(a - b));

    case MeanSpec::Kind::Geometric:
    case MeanSpec::Kind::KuboAndoPower: {
      const SymMatrix half = ea.ed.reconstruct_with(powers(ea.ed.lambdas, 0.5));
      const SymMatrix inv_half = ea.ed.reconstruct_with(powers(ea.ed.lambdas, -0.5));
      const SymMatrix whitened = SymMatrix::symmetrized(inv_half * b * inv_half);
      const ScalarFunction f = (spec.kind() == MeanSpec::Kind::Geometric)
                                   ? ScalarFunction::sqrt()
                                   : ScalarFunction::representing_power(spec.param());
      const SymMatrix core = apply_fun(whitened, f);
      return SymMatrix::symmetrized(half * core * half);
    }

    case MeanSpec::Kind::NaivePower: {
      const double p = spec.param();
      const SymMatrix ap = ea.ed.reconstruct_with(powers(ea.ed.lambdas, p));
      const SymMatrix bp = eb.ed.reconstruct_with(powers(eb.ed.lambdas, p));
      return apply_fun(0.5 * (ap + bp), ScalarFunction::power(1.0 / p));
    }
  }
  throw InvalidInput("matrix_mean: unknown mean kind");
}

double divergence_phi(double p, const SymMatrix& a, const SymMatrix& b) {
  if (!(p >= 0.5 - 1e-12) || !(p <= 1.0 + 1e-12))
    throw InvalidInput("divergence_phi: p must lie in [1/2, 1]");
  const SymMatrix arith = matrix_mean(MeanSpec::arithmetic(), a, b);
  const SymMatrix naive = matrix_mean(MeanSpec::naive_power(p), a, b);
  return (arith - naive).trace();
}

}  // namespace meanlab
