#include "meanlab/functional.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "meanlab/eigen.hpp"
#include "meanlab/errors.hpp"

namespace meanlab {

ScalarFunction ScalarFunction::power(double r) {
  if (!std::isfinite(r)) throw InvalidInput("power: exponent must be finite");
  return ScalarFunction(Kind::Power, r);
}

ScalarFunction ScalarFunction::sqrt() { return ScalarFunction(Kind::Sqrt, 0.5); }
ScalarFunction ScalarFunction::log1p() { return ScalarFunction(Kind::Log1p, 0.0); }
ScalarFunction ScalarFunction::ratio() { return ScalarFunction(Kind::Ratio, 0.0); }
ScalarFunction ScalarFunction::identity() { return ScalarFunction(Kind::Identity, 0.0); }

ScalarFunction ScalarFunction::representing_power(double p) {
  if (!std::isfinite(p) || p < 0.0)
    throw InvalidInput("representing_power: p must be finite and >= 0");
  return ScalarFunction(Kind::RepresentingPower, p);
}

ScalarFunction ScalarFunction::tabulated(std::vector<double> ts, std::vector<double> fs) {
  if (ts.size() != fs.size() || ts.size() < 2)
    throw InvalidInput("tabulated: need >= 2 samples of equal count");
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    if (!(ts[i] < ts[i + 1])) throw InvalidInput("tabulated: abscissae must increase strictly");

  // Fritsch-Carlson slopes: start from secants, then limit so the
  // interpolant preserves the data's monotonicity on every interval.
  const std::size_t n = ts.size();
  std::vector<double> d(n - 1), slope(n);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (fs[i + 1] - fs[i]) / (ts[i + 1] - ts[i]);
  slope[0] = d[0];
  slope[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    slope[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      slope[i] = slope[i + 1] = 0.0;
      continue;
    }
    const double alpha = slope[i] / d[i];
    const double beta = slope[i + 1] / d[i];
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      slope[i] = tau * alpha * d[i];
      slope[i + 1] = tau * beta * d[i];
    }
  }

  ScalarFunction f(Kind::Tabulated, 0.0);
  f.grid_t_ = std::move(ts);
  f.grid_f_ = std::move(fs);
  f.grid_slope_ = std::move(slope);
  return f;
}

double representing_function_value(double p, double t) {
  if (!(t > 0.0)) throw InvalidInput("representing function: t must be > 0");
  if (p == 0.0) return std::sqrt(t);
  // ((1 + t^p)/2)^(1/p) via expm1/log1p so the p -> 0 limit stays accurate.
  const double u = std::expm1(p * std::log(t));  // t^p - 1
  return std::exp(std::log1p(0.5 * u) / p);
}

double ScalarFunction::operator()(double t) const {
  switch (kind_) {
    case Kind::Power:
      return std::pow(t, param_);
    case Kind::Sqrt:
      return std::sqrt(t);
    case Kind::Log1p:
      return std::log1p(t);
    case Kind::Ratio:
      return t / (1.0 + t);
    case Kind::Identity:
      return t;
    case Kind::RepresentingPower:
      if (t == 0.0) return (param_ > 0.0) ? std::pow(0.5, 1.0 / param_) : 0.0;
      return representing_function_value(param_, t);
    case Kind::Tabulated: {
      const auto& ts = grid_t_;
      if (t < ts.front() || t > ts.back())
        throw DomainError("tabulated function: argument outside the grid");
      const auto it = std::upper_bound(ts.begin(), ts.end(), t);
      const std::size_t i = (it == ts.begin()) ? 0
                                               : std::min(static_cast<std::size_t>(it - ts.begin() - 1),
                                                          ts.size() - 2);
      const double h = ts[i + 1] - ts[i];
      const double s = (t - ts[i]) / h;
      const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
      const double h10 = s * (1 - s) * (1 - s);
      const double h01 = s * s * (3 - 2 * s);
      const double h11 = s * s * (s - 1);
      return h00 * grid_f_[i] + h10 * h * grid_slope_[i] + h01 * grid_f_[i + 1] +
             h11 * h * grid_slope_[i + 1];
    }
  }
  throw InvalidInput("ScalarFunction: unknown kind");
}

std::string ScalarFunction::name() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Power:
      os << "power:" << param_;
      break;
    case Kind::Sqrt:
      os << "sqrt";
      break;
    case Kind::Log1p:
      os << "log1p";
      break;
    case Kind::Ratio:
      os << "ratio";
      break;
    case Kind::Identity:
      os << "identity";
      break;
    case Kind::RepresentingPower:
      os << "reppower:" << param_;
      break;
    case Kind::Tabulated:
      os << "tabulated[" << grid_t_.size() << "]";
      break;
  }
  return os.str();
}

namespace {

bool is_integer(double r) { return std::isfinite(r) && r == std::floor(r) && std::abs(r) < 1e9; }

// Domain policy per kind; lambdas arrive already sorted from eig_sym.
std::vector<double> mapped_eigenvalues(const std::vector<double>& lambdas, double eps_p,
                                       const ScalarFunction& f) {
  std::vector<double> out;
  out.reserve(lambdas.size());
  for (double lam : lambdas) {
    double x = lam;
    switch (f.kind()) {
      case ScalarFunction::Kind::Power: {
        const double r = f.param();
        const bool needs_nonneg = (r < 0.0) || !is_integer(r);
        if (needs_nonneg) {
          if (x < -eps_p)
            throw DomainError("apply_fun: eigenvalue below PSD tolerance for fractional power");
          if (x < 0.0) x = 0.0;
          if (r < 0.0 && x == 0.0)
            throw DomainError("apply_fun: zero eigenvalue with negative power");
        }
        break;
      }
      case ScalarFunction::Kind::Sqrt:
      case ScalarFunction::Kind::RepresentingPower:
        if (x < -eps_p)
          throw DomainError("apply_fun: eigenvalue below PSD tolerance");
        if (x < 0.0) x = 0.0;
        break;
      case ScalarFunction::Kind::Log1p:
      case ScalarFunction::Kind::Ratio:
        if (x <= -1.0 + eps_p)
          throw DomainError("apply_fun: eigenvalue at or below -1");
        break;
      case ScalarFunction::Kind::Identity:
        break;
      case ScalarFunction::Kind::Tabulated:
        break;  // the evaluator enforces the grid domain
    }
    out.push_back(f(x));
    if (!std::isfinite(out.back()))
      throw DomainError("apply_fun: non-finite function value at eigenvalue " +
                        std::to_string(lam));
  }
  return out;
}

}  // namespace

SymMatrix apply_fun(const SymMatrix& m, const ScalarFunction& f) {
  const EigenDecomp ed = eig_sym(m);
  const double eps_p = 1e-10 * (1.0 + m.max_abs());
  return ed.reconstruct_with(mapped_eigenvalues(ed.lambdas, eps_p, f));
}

SymMatrix matrix_abs(const SymMatrix& m) {
  const EigenDecomp ed = eig_sym(m);
  std::vector<double> vals(ed.lambdas.size());
  for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::abs(ed.lambdas[i]);
  return ed.reconstruct_with(vals);
}

SymMatrix sqrt_psd(const SymMatrix& m) {
  const EigenDecomp ed = eig_sym(m);
  const double eps_p = 1e-10 * (1.0 + m.max_abs());
  std::vector<double> vals(ed.lambdas.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    double lam = ed.lambdas[i];
    if (lam < -eps_p) throw DomainError("sqrt_psd: matrix is not PSD within tolerance");
    vals[i] = std::sqrt(std::max(lam, 0.0));
  }
  return ed.reconstruct_with(vals);
}

SymMatrix clamp_psd(const SymMatrix& m) {
  const EigenDecomp ed = eig_sym(m);
  std::vector<double> vals(ed.lambdas.size());
  bool changed = false;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    vals[i] = std::max(ed.lambdas[i], 0.0);
    changed |= vals[i] != ed.lambdas[i];
  }
  return changed ? ed.reconstruct_with(vals) : m;
}

}  // namespace meanlab
