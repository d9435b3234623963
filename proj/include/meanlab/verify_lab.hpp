#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meanlab/functional.hpp"
#include "meanlab/matrix.hpp"

namespace meanlab {

enum class VerdictStatus { HoldsOnSamples, Violated };

const char* to_string(VerdictStatus s);

/// Everything needed to re-check a violation independently: the sampled
/// pair, which inequality failed, the offending eigenvalue/eigenvector
/// of the difference, and the seed that regenerates the sample.
struct Witness {
  SymMatrix a;
  SymMatrix b;
  std::string link;
  double offending_eigenvalue = 0.0;
  std::vector<double> eigenvector;
  std::uint64_t sample_seed = 0;
  int sample_index = 0;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::HoldsOnSamples;
  int samples_run = 0;
  std::optional<Witness> witness;

  bool violated() const { return status == VerdictStatus::Violated; }
};

/// An inequality hypothesis between two means of the same SPD pair.
class Hypothesis {
 public:
  enum class Kind {
    GeomVsPower,        // A # B  vs  P(p, A, B),      0 < p <= 1
    PowerVsArith,       // P(p, A, B)  vs  (A+B)/2,    0 < p <= 1
    ArithVsPower,       // (A+B)/2  vs  P(q, A, B),    q >= 1
    NaivePowerVsArith,  // naive_p  vs  (A+B)/2,       1/2 <= p <= 1
    ArithVsNaivePower,  // (A+B)/2  vs  naive_q,       q >= 1
    ReverseAGM,         // (A+B-|A-B|)/2  vs  A # B
  };

  static Hypothesis geom_vs_power(double p);
  static Hypothesis power_vs_arith(double p);
  static Hypothesis arith_vs_power(double q);
  static Hypothesis naive_power_vs_arith(double p);
  static Hypothesis arith_vs_naive_power(double q);
  static Hypothesis reverse_agm();

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  std::string name() const;

  /// True when "f(lhs) <= f(rhs) for all SPD pairs" forces f to be
  /// operator monotone (the Kubo-Ando trio and the reverse AGM); the
  /// naive pair does not characterize.
  bool characterizing() const;

  SymMatrix lhs_mean(const SymMatrix& a, const SymMatrix& b) const;
  SymMatrix rhs_mean(const SymMatrix& a, const SymMatrix& b) const;

 private:
  Hypothesis(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

/// Random SPD pairs, asserting the Kubo-Ando chain
/// A#B <= P(p) <= (A+B)/2 <= P(q) and, when p >= 1/2, the naive chain
/// naive_p <= (A+B)/2 <= naive_q. Expected to hold on every sample.
Verdict check_mean_inequalities(double p, double q, int dim, int samples, std::uint64_t seed,
                                int threads = 1);

/// Samples ordered pairs A <= B (B = A + scaled random PSD bump) and
/// tests f(A) <= f(B). For f = t^r with r > 1 and dim >= 2, sample 0 is
/// the canonical violating pair scaled randomly, so the search cannot
/// miss.
Verdict test_monotonicity(const ScalarFunction& f, int dim, int samples, std::uint64_t seed,
                          int threads = 1);

struct CharacterizationReport {
  Verdict inequality;
  Verdict monotonicity;
  /// False only for the anomaly a characterizing hypothesis forbids:
  /// inequality holding on all samples while monotonicity is violated.
  bool consistent = true;
};

CharacterizationReport test_characterization(const ScalarFunction& f, const Hypothesis& hyp,
                                             int dim, int samples, std::uint64_t seed,
                                             int threads = 1);

/// The three displayed links showing t^r slips through the
/// arith-vs-naive-power inequality without being operator monotone:
///   ((A+B)/2)^r <= (A^r+B^r)/2 <= ((A^q+B^q)/2)^(r/q)
///                             <= [((A^q+B^q)/2)^(1/q)]^r
/// plus the monotonicity verdict for t^r itself.
struct Prop31Report {
  double q = 0.0;
  double r = 0.0;
  std::array<Verdict, 3> links;
  Verdict monotonicity;
};

Prop31Report prop31_counterexample(double q, double r, int dim, int samples, std::uint64_t seed,
                                   int threads = 1);

}  // namespace meanlab
