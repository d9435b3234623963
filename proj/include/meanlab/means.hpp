#pragma once

#include <string>

#include "meanlab/matrix.hpp"

namespace meanlab {

/// Tagged choice of a binary matrix mean.
///
/// KuboAndoPower(p):  A^(1/2) f_p(A^(-1/2) B A^(-1/2)) A^(1/2) with
///                    f_p(t) = ((1 + t^p)/2)^(1/p); p = 0 resolves to the
///                    geometric mean (the p -> 0 limit).
/// NaivePower(p):     ((A^p + B^p)/2)^(1/p), p >= 1e-3 in this artifact.
/// Geometric:         A # B.
/// Arithmetic:        (A + B)/2.
/// MinMean:           (A + B - |A - B|)/2.
class MeanSpec {
 public:
  enum class Kind { KuboAndoPower, NaivePower, Geometric, Arithmetic, MinMean };

  static MeanSpec kubo_ando_power(double p);
  static MeanSpec naive_power(double p);
  static MeanSpec geometric() { return MeanSpec(Kind::Geometric, 0.0); }
  static MeanSpec arithmetic() { return MeanSpec(Kind::Arithmetic, 0.0); }
  static MeanSpec min_mean() { return MeanSpec(Kind::MinMean, 0.0); }

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  std::string name() const;

 private:
  MeanSpec(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

/// mu(p, a, b) = ((a^p + b^p)/2)^(1/p); p = 0 means sqrt(a b).
double scalar_power_mean(double p, double a, double b);

/// f_p(t) = ((1 + t^p)/2)^(1/p); f_p(1) = 1, t f_p(1/t) = f_p(t).
double representing_function(double p, double t);

/// The chosen mean of an SPD pair. Inputs must be SPD within tolerance;
/// MinMean output is symmetric but may be merely PSD (or slightly
/// indefinite for extreme pairs).
SymMatrix matrix_mean(const MeanSpec& spec, const SymMatrix& a, const SymMatrix& b);

/// Tr((A+B)/2 - ((A^p+B^p)/2)^(1/p)) for 1/2 <= p <= 1; non-negative up
/// to roundoff.
double divergence_phi(double p, const SymMatrix& a, const SymMatrix& b);

}  // namespace meanlab
