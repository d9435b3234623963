#pragma once

#include <string>
#include <vector>

#include "meanlab/matrix.hpp"

namespace meanlab {

/// Scalar function f used for functional calculus f(M) = Q diag(f(l_i)) Q^T.
/// Every built-in kind is defined at least on (0, inf).
class ScalarFunction {
 public:
  enum class Kind {
    Power,             // t^r
    Sqrt,              // t^(1/2)
    Log1p,             // log(1 + t)
    Ratio,             // t / (1 + t)
    Identity,          // t
    RepresentingPower, // ((1 + t^p)/2)^(1/p), p = 0 means sqrt(t)
    Tabulated,         // monotone cubic interpolant of (t, f(t)) samples
  };

  static ScalarFunction power(double r);
  static ScalarFunction sqrt();
  static ScalarFunction log1p();
  static ScalarFunction ratio();
  static ScalarFunction identity();
  static ScalarFunction representing_power(double p);
  /// Fritsch-Carlson monotone cubic through strictly increasing abscissae.
  /// Evaluation outside [ts.front(), ts.back()] is a domain error.
  static ScalarFunction tabulated(std::vector<double> ts, std::vector<double> fs);

  double operator()(double t) const;

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  std::string name() const;  // "power:2", "sqrt", ... used in reports

 private:
  ScalarFunction(Kind k, double p) : kind_(k), param_(p) {}

  Kind kind_ = Kind::Identity;
  double param_ = 0.0;
  std::vector<double> grid_t_, grid_f_, grid_slope_;
};

/// ((1 + t^p)/2)^(1/p) evaluated stably down to p -> 0 (where it is sqrt(t)).
double representing_function_value(double p, double t);

/// Functional calculus. Eigenvalues in [-eps_p, 0] with
/// eps_p = 1e-10 * (1 + ||M||_max) are clamped to zero before functions
/// that need a non-negative argument; anything more negative (or outside
/// the function's domain) raises DomainError.
SymMatrix apply_fun(const SymMatrix& m, const ScalarFunction& f);

/// Matrix absolute value |M| = Q diag(|l_i|) Q^T.
SymMatrix matrix_abs(const SymMatrix& m);

/// Principal square root of a PSD matrix (negative roundoff clamped).
SymMatrix sqrt_psd(const SymMatrix& m);

/// PSD clamp: eigenvalues below zero are lifted to zero.
SymMatrix clamp_psd(const SymMatrix& m);

}  // namespace meanlab
