#include "meanlab/verify_lab.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <random>
#include <thread>

#include "meanlab/errors.hpp"
#include "meanlab/loewner.hpp"
#include "meanlab/means.hpp"
#include "meanlab/random.hpp"

namespace meanlab {

const char* to_string(VerdictStatus s) {
  return s == VerdictStatus::HoldsOnSamples ? "holds-on-samples" : "violated";
}

Hypothesis Hypothesis::geom_vs_power(double p) {
  if (!(p > 0.0) || !(p <= 1.0)) throw InvalidInput("GeomVsPower: p must lie in (0, 1]");
  return Hypothesis(Kind::GeomVsPower, p);
}

Hypothesis Hypothesis::power_vs_arith(double p) {
  if (!(p > 0.0) || !(p <= 1.0)) throw InvalidInput("PowerVsArith: p must lie in (0, 1]");
  return Hypothesis(Kind::PowerVsArith, p);
}

Hypothesis Hypothesis::arith_vs_power(double q) {
  if (!(q >= 1.0)) throw InvalidInput("ArithVsPower: q must be >= 1");
  return Hypothesis(Kind::ArithVsPower, q);
}

Hypothesis Hypothesis::naive_power_vs_arith(double p) {
  if (!(p >= 0.5) || !(p <= 1.0)) throw InvalidInput("NaivePowerVsArith: p must lie in [1/2, 1]");
  return Hypothesis(Kind::NaivePowerVsArith, p);
}

Hypothesis Hypothesis::arith_vs_naive_power(double q) {
  if (!(q >= 1.0)) throw InvalidInput("ArithVsNaivePower: q must be >= 1");
  return Hypothesis(Kind::ArithVsNaivePower, q);
}

Hypothesis Hypothesis::reverse_agm() { return Hypothesis(Kind::ReverseAGM, 0.0); }

std::string Hypothesis::name() const {
  switch (kind_) {
    case Kind::GeomVsPower:
      return "geom<=power(" + std::to_string(param_) + ")";
    case Kind::PowerVsArith:
      return "power(" + std::to_string(param_) + ")<=arith";
    case Kind::ArithVsPower:
      return "arith<=power(" + std::to_string(param_) + ")";
    case Kind::NaivePowerVsArith:
      return "naive(" + std::to_string(param_) + ")<=arith";
    case Kind::ArithVsNaivePower:
      return "arith<=naive(" + std::to_string(param_) + ")";
    case Kind::ReverseAGM:
      return "min<=geom";
  }
  return "?";
}

bool Hypothesis::characterizing() const {
  return kind_ != Kind::NaivePowerVsArith && kind_ != Kind::ArithVsNaivePower;
}

SymMatrix Hypothesis::lhs_mean(const SymMatrix& a, const SymMatrix& b) const {
  switch (kind_) {
    case Kind::GeomVsPower:
      return matrix_mean(MeanSpec::geometric(), a, b);
    case Kind::PowerVsArith:
      return matrix_mean(MeanSpec::kubo_ando_power(param_), a, b);
    case Kind::ArithVsPower:
    case Kind::ArithVsNaivePower:
      return matrix_mean(MeanSpec::arithmetic(), a, b);
    case Kind::NaivePowerVsArith:
      return matrix_mean(MeanSpec::naive_power(param_), a, b);
    case Kind::ReverseAGM:
      return matrix_mean(MeanSpec::min_mean(), a, b);
  }
  throw InvalidInput("Hypothesis: unknown kind");
}

SymMatrix Hypothesis::rhs_mean(const SymMatrix& a, const SymMatrix& b) const {
  switch (kind_) {
    case Kind::GeomVsPower:
      return matrix_mean(MeanSpec::kubo_ando_power(param_), a, b);
    case Kind::PowerVsArith:
    case Kind::NaivePowerVsArith:
      return matrix_mean(MeanSpec::arithmetic(), a, b);
    case Kind::ArithVsPower:
      return matrix_mean(MeanSpec::kubo_ando_power(param_), a, b);
    case Kind::ArithVsNaivePower:
      return matrix_mean(MeanSpec::naive_power(param_), a, b);
    case Kind::ReverseAGM:
      return matrix_mean(MeanSpec::geometric(), a, b);
  }
  throw InvalidInput("Hypothesis: unknown kind");
}

namespace {

constexpr double kOrderTol = 1e-9;
constexpr double kSpecLo = 0.1;
constexpr double kSpecHi = 10.0;

// Runs eval(i) for i in [0, samples); returns the violation with the
// smallest sample index regardless of thread count.
std::optional<Witness> scan_samples(int samples, int threads,
                                    const std::function<std::optional<Witness>(int)>& eval) {
  if (samples < 1) throw InvalidInput("verify-lab: samples must be >= 1");
  threads = std::max(1, threads);
  if (threads == 1) {
    for (int i = 0; i < samples; ++i)
      if (auto w = eval(i)) return w;
    return std::nullopt;
  }

  std::optional<Witness> best;
  std::mutex mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      std::optional<Witness> local;
      for (int i = t; i < samples; i += threads) {
        if (auto w = eval(i)) {
          if (!local || w->sample_index < local->sample_index) local = std::move(w);
        }
      }
      if (local) {
        std::lock_guard<std::mutex> lock(mu);
        if (!best || local->sample_index < best->sample_index) best = std::move(local);
      }
    });
  }
  for (auto& th : pool) th.join();
  return best;
}

Verdict verdict_from(std::optional<Witness> w, int samples) {
  Verdict v;
  if (w) {
    v.status = VerdictStatus::Violated;
    v.samples_run = w->sample_index + 1;
    v.witness = std::move(w);
  } else {
    v.status = VerdictStatus::HoldsOnSamples;
    v.samples_run = samples;
  }
  return v;
}

struct SpdPair {
  SymMatrix a;
  SymMatrix b;
  std::uint64_t seed;
};

SpdPair sample_spd_pair(int dim, std::uint64_t master_seed, int index) {
  const std::uint64_t sa = mix_seed(master_seed, 2 * static_cast<std::uint64_t>(index));
  const std::uint64_t sb = mix_seed(master_seed, 2 * static_cast<std::uint64_t>(index) + 1);
  return {random_spd(dim, sa, kSpecLo, kSpecHi), random_spd(dim, sb, kSpecLo, kSpecHi), sa};
}

// A <= B with B = A + u^2 * 9 ||A|| / ||P|| * P; u ~ U(0,1) biases the
// bump toward near-equality while ||B||/||A|| stays <= 10.
SpdPair sample_ordered_pair(int dim, std::uint64_t master_seed, int index) {
  const std::uint64_t sa = mix_seed(master_seed, 2 * static_cast<std::uint64_t>(index));
  const std::uint64_t sb = mix_seed(master_seed, 2 * static_cast<std::uint64_t>(index) + 1);
  const SymMatrix a = random_spd(dim, sa, kSpecLo, kSpecHi);

  std::mt19937_64 rng(sb);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix l(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) l(i, j) = gauss(rng);
  const SymMatrix bump = SymMatrix::symmetrized(l.transposed() * l);

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u = unif(rng);
  const double scale = u * u * 9.0 * a.max_abs() / std::max(bump.max_abs(), 1e-300);
  const SymMatrix b = a + SymMatrix::symmetrized(scale * bump);
  return {a, b, sa};
}

// Canonical non-monotone witness for t^r, r > 1, embedded top-left and
// scaled by a seeded random factor.
SpdPair injected_power_witness(int dim, std::uint64_t master_seed) {
  std::mt19937_64 rng(mix_seed(master_seed, 0x77ull));
  std::uniform_real_distribution<double> unif(0.5, 2.0);
  const double c = unif(rng);

  Matrix a(dim), b(dim);
  a(0, 0) = c;
  a(0, 1) = c;
  a(1, 0) = c;
  a(1, 1) = c;
  b(0, 0) = 2 * c;
  b(0, 1) = c;
  b(1, 0) = c;
  b(1, 1) = c;
  for (int i = 2; i < dim; ++i) {
    a(i, i) = c;
    b(i, i) = c;
  }
  return {SymMatrix(a), SymMatrix(b), mix_seed(master_seed, 0x77ull)};
}

std::optional<Witness> check_leq(const SymMatrix& lhs, const SymMatrix& rhs,
                                 const std::string& link, const SpdPair& pair, int index) {
  const LoewnerResult lw = loewner_leq(lhs, rhs, kOrderTol);
  if (lw.holds) return std::nullopt;
  Witness w;
  w.a = pair.a;
  w.b = pair.b;
  w.link = link;
  w.offending_eigenvalue = lw.min_eigenvalue;
  w.eigenvector = lw.eigenvector;
  w.sample_seed = pair.seed;
  w.sample_index = index;
  return w;
}

}  // namespace

Verdict check_mean_inequalities(double p, double q, int dim, int samples, std::uint64_t seed,
                                int threads) {
  if (!(p > 0.0) || !(p <= 1.0) || !(q >= 1.0))
    throw InvalidInput("check_mean_inequalities: need 0 < p <= 1 <= q");
  if (dim < 1) throw InvalidInput("check_mean_inequalities: dim must be >= 1");
  const bool naive_set = p >= 0.5 - 1e-12;

  auto eval = [=](int i) -> std::optional<Witness> {
    const SpdPair pair = sample_spd_pair(dim, seed, i);
    const SymMatrix geom = matrix_mean(MeanSpec::geometric(), pair.a, pair.b);
    const SymMatrix kp = matrix_mean(MeanSpec::kubo_ando_power(p), pair.a, pair.b);
    const SymMatrix arith = matrix_mean(MeanSpec::arithmetic(), pair.a, pair.b);
    const SymMatrix kq = matrix_mean(MeanSpec::kubo_ando_power(q), pair.a, pair.b);
    if (auto w = check_leq(geom, kp, "geom<=power(p)", pair, i)) return w;
    if (auto w = check_leq(kp, arith, "power(p)<=arith", pair, i)) return w;
    if (auto w = check_leq(arith, kq, "arith<=power(q)", pair, i)) return w;
    if (naive_set) {
      const SymMatrix np = matrix_mean(MeanSpec::naive_power(p), pair.a, pair.b);
      const SymMatrix nq = matrix_mean(MeanSpec::naive_power(q), pair.a, pair.b);
      if (auto w = check_leq(np, arith, "naive(p)<=arith", pair, i)) return w;
      if (auto w = check_leq(arith, nq, "arith<=naive(q)", pair, i)) return w;
    }
    return std::nullopt;
  };
  return verdict_from(scan_samples(samples, threads, eval), samples);
}

Verdict test_monotonicity(const ScalarFunction& f, int dim, int samples, std::uint64_t seed,
                          int threads) {
  if (dim < 1) throw InvalidInput("test_monotonicity: dim must be >= 1");
  const bool inject =
      f.kind() == ScalarFunction::Kind::Power && f.param() > 1.0 && dim >= 2;

  auto eval = [=](int i) -> std::optional<Witness> {
    const SpdPair pair =
        (inject && i == 0) ? injected_power_witness(dim, seed) : sample_ordered_pair(dim, seed, i);
    return check_leq(apply_fun(pair.a, f), apply_fun(pair.b, f), f.name(), pair, i);
  };
  return verdict_from(scan_samples(samples, threads, eval), samples);
}

CharacterizationReport test_characterization(const ScalarFunction& f, const Hypothesis& hyp,
                                             int dim, int samples, std::uint64_t seed,
                                             int threads) {
  auto eval = [&, dim, samples, seed](int i) -> std::optional<Witness> {
    const SpdPair pair = sample_spd_pair(dim, seed, i);
    return check_leq(apply_fun(hyp.lhs_mean(pair.a, pair.b), f),
                     apply_fun(hyp.rhs_mean(pair.a, pair.b), f), hyp.name() + " under " + f.name(),
                     pair, i);
  };

  CharacterizationReport rep;
  rep.inequality = verdict_from(scan_samples(samples, threads, eval), samples);
  rep.monotonicity = test_monotonicity(f, dim, samples, mix_seed(seed, 0xC0ull), threads);
  rep.consistent = !(hyp.characterizing() && !rep.inequality.violated() &&
                     rep.monotonicity.violated());
  return rep;
}

Prop31Report prop31_counterexample(double q, double r, int dim, int samples, std::uint64_t seed,
                                   int threads) {
  if (!(q > 1.0)) throw InvalidInput("prop31_counterexample: q must be > 1");
  if (!(r > 1.0) || !(r <= std::min(2.0, q) + 1e-12))
    throw InvalidInput("prop31_counterexample: r must lie in (1, min{2, q}]");
  if (dim < 1) throw InvalidInput("prop31_counterexample: dim must be >= 1");

  const char* link_names[3] = {"arith^r<=moment(r)", "moment(r)<=moment(q)^(r/q)",
                               "moment(q)^(r/q)<=naive(q)^r"};

  std::array<std::optional<Witness>, 3> best;
  std::mutex mu;
  auto eval = [&, dim, seed](int i) -> std::optional<Witness> {
    const SpdPair pair = sample_spd_pair(dim, seed, i);
    const SymMatrix arith = matrix_mean(MeanSpec::arithmetic(), pair.a, pair.b);
    const SymMatrix ar = apply_fun(pair.a, ScalarFunction::power(r));
    const SymMatrix br = apply_fun(pair.b, ScalarFunction::power(r));
    const SymMatrix moment_r = 0.5 * (ar + br);
    const SymMatrix aq = apply_fun(pair.a, ScalarFunction::power(q));
    const SymMatrix bq = apply_fun(pair.b, ScalarFunction::power(q));
    const SymMatrix moment_q = 0.5 * (aq + bq);

    const SymMatrix lhs[3] = {apply_fun(arith, ScalarFunction::power(r)), moment_r,
                              apply_fun(moment_q, ScalarFunction::power(r / q))};
    const SymMatrix rhs[3] = {
        moment_r, apply_fun(moment_q, ScalarFunction::power(r / q)),
        apply_fun(apply_fun(moment_q, ScalarFunction::power(1.0 / q)), ScalarFunction::power(r))};

    for (int l = 0; l < 3; ++l) {
      if (auto w = check_leq(lhs[l], rhs[l], link_names[l], pair, i)) {
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = best[static_cast<std::size_t>(l)];
        if (!slot || w->sample_index < slot->sample_index) slot = std::move(w);
      }
    }
    return std::nullopt;  // scan every sample; accumulation happens above
  };
  scan_samples(samples, threads, eval);

  Prop31Report rep;
  rep.q = q;
  rep.r = r;
  for (int l = 0; l < 3; ++l)
    rep.links[static_cast<std::size_t>(l)] =
        verdict_from(std::move(best[static_cast<std::size_t>(l)]), samples);
  rep.monotonicity =
      test_monotonicity(ScalarFunction::power(r), dim, samples, mix_seed(seed, 0xC1ull), threads);
  return rep;
}

}  // namespace meanlab
