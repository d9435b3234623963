// Acceptance suite: one pass/fail line per criterion, exit 0 only if
// every criterion passes. The meanlab CLI path is taken from argv[1]
// (criterion 9 spawns it).

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "meanlab/eigen.hpp"
#include "meanlab/functional.hpp"
#include "meanlab/inverse_solvers.hpp"
#include "meanlab/json_io.hpp"
#include "meanlab/loewner.hpp"
#include "meanlab/means.hpp"
#include "meanlab/random.hpp"
#include "meanlab/scalar_solvers.hpp"
#include "meanlab/verify_lab.hpp"

using nlohmann::json;
using namespace meanlab;

namespace {

int g_failures = 0;
std::string g_cli_path;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, const std::string& name, bool ok, double elapsed_s,
            const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s (%.1f s)%s%s\n", ok ? "PASS" : "FAIL", id, name.c_str(),
              elapsed_s, detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double rel_tol(const SymMatrix& x, const SymMatrix& y, double coeff) {
  return coeff * (1.0 + x.max_abs() + y.max_abs());
}

// X <= Y with whitened spectrum in [lo, hi].
std::pair<SymMatrix, SymMatrix> ordered_pair(int dim, std::uint64_t seed, double lo, double hi) {
  const SymMatrix x = random_spd(dim, mix_seed(seed, 1), 0.5, 2.0);
  const SymMatrix w = random_spd(dim, mix_seed(seed, 2), lo, hi);
  const SymMatrix xh = sqrt_psd(x);
  return {x, SymMatrix::symmetrized(xh * w * xh)};
}

// ---- criterion 1 -------------------------------------------------------

void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  const double ps[] = {0.25, 0.5, 0.75, 1.0};
  const double qs[] = {1.0, 1.5, 2.0, 3.0};
  for (double p : ps) {
    for (double q : qs) {
      for (int dim = 1; dim <= 8 && ok; ++dim) {
        // 63 samples per dim gives 504 >= 500 pairs per (p, q).
        const std::uint64_t seed = mix_seed(10'000, static_cast<std::uint64_t>(p * 100) * 1000 +
                                                        static_cast<std::uint64_t>(q * 100) * 10 +
                                                        static_cast<std::uint64_t>(dim));
        const Verdict v = check_mean_inequalities(p, q, dim, 63, seed);
        if (v.violated()) {
          ok = false;
          detail = "violated at p=" + std::to_string(p) + " q=" + std::to_string(q) +
                   " dim=" + std::to_string(dim) + " link=" + v.witness->link;
        }
      }
    }
  }
  const double dt = seconds_since(t0);
  report(1, "mean-chain suite (16 parameter pairs x 504 samples, dims 1-8)", ok && dt < 60.0, dt,
         detail);
}

// ---- criterion 2 -------------------------------------------------------

void criterion_2() {
  const auto run_solver = [](const char* name, auto make_and_solve) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (int i = 0; i < 200 && ok; ++i) {
      if (!make_and_solve(i, detail)) {
        ok = false;
        detail = std::string(name) + " instance " + std::to_string(i) + ": " + detail;
      }
    }
    const double dt = seconds_since(t0);
    report(2, std::string("inverse round-trips: ") + name + " (200 instances, dims 1-8)",
           ok && dt < 30.0, dt, detail);
  };

  const auto check_sol = [](const InverseSolution& sol, const SymMatrix& x, const SymMatrix& y,
                            std::string& detail) {
    const double tol = rel_tol(x, y, 1e-8);
    if (sol.residual_x > tol || sol.residual_y > tol) {
      detail = "residuals " + std::to_string(sol.residual_x) + ", " +
               std::to_string(sol.residual_y);
      return false;
    }
    if (!is_psd_within_tol(sol.a) || !is_psd_within_tol(sol.b)) {
      detail = "output not PSD";
      return false;
    }
    return true;
  };

  run_solver("solve_geom_power", [&](int i, std::string& detail) {
    const int dim = 1 + (i % 8);
    const double p = 0.25 * (1 + (i / 8) % 4);
    const auto [x, y] = ordered_pair(dim, mix_seed(20'000, i), 1.0, 5.0);
    return check_sol(solve_geom_power(p, x, y), x, y, detail);
  });

  run_solver("solve_arith_power_local", [&](int i, std::string& detail) {
    const int dim = 1 + (i % 8);
    if (i % 2 == 0) {
      const double q = 1.5 + 0.5 * ((i / 8) % 4);
      const auto [x, y] = ordered_pair(dim, mix_seed(21'000, i), 1.0, gamma_of(q) * 0.995);
      return check_sol(solve_arith_power_local(q, x, y), x, y, detail);
    }
    const double p = 0.5 + 0.15 * ((i / 8) % 3);
    const auto [x, y] = ordered_pair(dim, mix_seed(21'500, i), gamma_of(p) * 1.005, 1.0);
    return check_sol(solve_arith_power_local(p, x, y), x, y, detail);
  });

  run_solver("solve_sqrt_arith", [&](int i, std::string& detail) {
    const int dim = 1 + (i % 8);
    const auto [x, y] = ordered_pair(dim, mix_seed(22'000, i), 1.0, 1.97);
    return check_sol(solve_sqrt_arith(x, y), x, y, detail);
  });

  run_solver("solve_arith_quadratic", [&](int i, std::string& detail) {
    const int dim = 1 + (i % 8);
    const SymMatrix x = random_spd(dim, mix_seed(23'000, 2 * i), 0.5, 2.0);
    const SymMatrix w = random_spd(dim, mix_seed(23'000, 2 * i + 1), 1.0, 1.95);
    const SymMatrix y = sqrt_psd(SymMatrix::symmetrized(x * w * x));
    return check_sol(solve_arith_quadratic(x, y), x, y, detail);
  });
}

// ---- criterion 3 -------------------------------------------------------

void criterion_3() {
  const auto t0 = std::chrono::steady_clock::now();
  const double gamma0 = 0.5 * (1.0 + gamma_of(2.0));
  bool ok = true;
  std::string detail;

  for (int i = 0; i < 100 && ok; ++i) {
    const int dim = 2 + (i % 5);
    const double cond = std::pow(10.0, 3.0 * (i % 10) / 9.0);  // spectrum of Y0 up to 1e3
    const auto [x, y] = ordered_pair(dim, mix_seed(30'000, i), 1.0, std::max(1.0 + 1e-6, cond));

    const ChainWitness cw = chain_decompose(x, y, gamma0);
    if (max_abs_diff(cw.elements.front(), x) > 1e-10 * (1.0 + x.max_abs()) ||
        max_abs_diff(cw.elements.back(), y) > 1e-10 * (1.0 + y.max_abs())) {
      ok = false;
      detail = "endpoints drifted at instance " + std::to_string(i);
      break;
    }
    for (const auto& link : cw.links) {
      if (!link.ratio_ok) {
        ok = false;
        detail = "ratio certificate failed at instance " + std::to_string(i);
        break;
      }
    }
    if (!ok) break;

    const ChainWitness solved = chain_solve_global(2.0, x, y);
    for (std::size_t k = 0; k + 1 < solved.elements.size(); ++k) {
      const auto& sol = solved.links[k].solution;
      if (!sol) {
        ok = false;
        detail = "missing link solution";
        break;
      }
      const double tol = rel_tol(solved.elements[k], solved.elements[k + 1], 1e-8);
      if (sol->residual_x > tol || sol->residual_y > tol) {
        ok = false;
        detail = "link residual " + std::to_string(sol->residual_x) + "/" +
                 std::to_string(sol->residual_y) + " at instance " + std::to_string(i);
        break;
      }
    }
  }

  // Hand-traced 6-element chain, exact to 1e-10.
  if (ok) {
    const ChainWitness cw =
        chain_decompose(SymMatrix::identity(2), SymMatrix::diag({1.9, 1.1}), 1.2);
    const std::vector<SymMatrix> expected = {
        SymMatrix::identity(2),        SymMatrix::diag({1.0, 1.1}),
        SymMatrix::diag({1.2, 1.1}),   SymMatrix::diag({1.44, 1.1}),
        SymMatrix::diag({1.728, 1.1}), SymMatrix::diag({1.9, 1.1})};
    if (cw.elements.size() != expected.size()) {
      ok = false;
      detail = "hand-traced chain has " + std::to_string(cw.elements.size()) + " elements";
    } else {
      for (std::size_t k = 0; k < expected.size(); ++k)
        if (max_abs_diff(cw.elements[k], expected[k]) > 1e-10) {
          ok = false;
          detail = "hand-traced element " + std::to_string(k) + " deviates";
        }
    }
  }

  report(3, "chain decomposition (100 instances, cond up to 1e3, all links solved at q=2)", ok,
         seconds_since(t0), detail);
}

// ---- criterion 4 -------------------------------------------------------

void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  const auto diag_instance = [](std::uint64_t seed, int dim, double ratio_lo, double ratio_hi) {
    std::vector<double> xs(dim), ratios(dim);
    std::uint64_t s = seed;
    for (int k = 0; k < dim; ++k) {
      s = mix_seed(s, 17);
      xs[k] = 0.5 + 1.5 * (double(s % 10'000) / 10'000.0);
      s = mix_seed(s, 19);
      ratios[k] = ratio_lo + (ratio_hi - ratio_lo) * (double(s % 10'000) / 10'000.0);
    }
    return std::make_pair(xs, ratios);
  };

  for (int i = 0; i < 100 && ok; ++i) {
    const int dim = 1 + (i % 6);

    {  // geom-power
      const double p = 0.25 + 0.25 * (i % 4);
      const auto [xs, ratios] = diag_instance(mix_seed(40'000, i), dim, 1.0, 4.0);
      std::vector<double> ys(dim), ea(dim), eb(dim);
      for (int k = 0; k < dim; ++k) {
        ys[k] = xs[k] * ratios[k];
        const double a = invert_h(p, ratios[k]).value;
        ea[k] = xs[k] * a;
        eb[k] = xs[k] / a;
      }
      const auto sol = solve_geom_power(p, SymMatrix::diag(xs), SymMatrix::diag(ys));
      if (max_abs_diff(sol.a, SymMatrix::diag(ea)) > 1e-10 ||
          max_abs_diff(sol.b, SymMatrix::diag(eb)) > 1e-10) {
        ok = false;
        detail = "geom-power scalar mismatch at instance " + std::to_string(i);
      }
    }

    if (ok) {  // arith-power, q side
      const double q = 1.5 + 0.5 * (i % 3);
      const auto [xs, ratios] =
          diag_instance(mix_seed(41'000, i), dim, 1.0, 1.0 + (gamma_of(q) - 1.0) * 0.98);
      std::vector<double> ys(dim), ea(dim), eb(dim);
      for (int k = 0; k < dim; ++k) {
        ys[k] = xs[k] * ratios[k];
        const double d = invert_phi(q, ratios[k]).value;
        ea[k] = xs[k] * d;
        eb[k] = xs[k] * (2.0 - d);
      }
      const auto sol = solve_arith_power_local(q, SymMatrix::diag(xs), SymMatrix::diag(ys));
      if (max_abs_diff(sol.a, SymMatrix::diag(ea)) > 1e-10 ||
          max_abs_diff(sol.b, SymMatrix::diag(eb)) > 1e-10) {
        ok = false;
        detail = "arith-power scalar mismatch at instance " + std::to_string(i);
      }
    }

    if (ok) {  // sqrt-arith
      const auto [xs, ratios] = diag_instance(mix_seed(42'000, i), dim, 1.0, 1.95);
      std::vector<double> ys(dim), ea(dim), eb(dim);
      for (int k = 0; k < dim; ++k) {
        ys[k] = xs[k] * ratios[k];
        const double root = std::sqrt(ys[k] - xs[k]);
        ea[k] = std::pow(std::sqrt(xs[k]) + root, 2.0);
        eb[k] = std::pow(std::sqrt(xs[k]) - root, 2.0);
      }
      const auto sol = solve_sqrt_arith(SymMatrix::diag(xs), SymMatrix::diag(ys));
      if (max_abs_diff(sol.a, SymMatrix::diag(ea)) > 1e-10 ||
          max_abs_diff(sol.b, SymMatrix::diag(eb)) > 1e-10) {
        ok = false;
        detail = "sqrt-arith scalar mismatch at instance " + std::to_string(i);
      }
    }

    if (ok) {  // arith-quadratic
      const auto [xs, ratios] = diag_instance(mix_seed(43'000, i), dim, 1.0, 1.39);
      std::vector<double> ys(dim), ea(dim), eb(dim);
      for (int k = 0; k < dim; ++k) {
        ys[k] = xs[k] * std::sqrt(ratios[k]);  // Y^2 = ratio * X^2
        const double root = std::sqrt(ys[k] * ys[k] - xs[k] * xs[k]);
        ea[k] = xs[k] + root;
        eb[k] = xs[k] - root;
      }
      const auto sol = solve_arith_quadratic(SymMatrix::diag(xs), SymMatrix::diag(ys));
      if (max_abs_diff(sol.a, SymMatrix::diag(ea)) > 1e-10 ||
          max_abs_diff(sol.b, SymMatrix::diag(eb)) > 1e-10) {
        ok = false;
        detail = "arith-quadratic scalar mismatch at instance " + std::to_string(i);
      }
    }
  }

  report(4, "scalar oracle equivalence on commuting diagonals (100 instances per solver)", ok,
         seconds_since(t0), detail);
}

// ---- criterion 5 -------------------------------------------------------

void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto sol = solve_sqrt_arith(SymMatrix(1, {1.0}), SymMatrix(1, {1.5}));
  const bool ok = std::abs(sol.a(0, 0) - 2.9142136) <= 1e-6 &&
                  std::abs(sol.b(0, 0) - 0.0857864) <= 1e-6 && sol.residual_x <= 1e-10 &&
                  sol.residual_y <= 1e-10;
  report(5, "closed-form check solve_sqrt_arith([1],[1.5])", ok, seconds_since(t0));
}

// ---- criterion 6 -------------------------------------------------------

void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  const Verdict v2 = test_monotonicity(ScalarFunction::power(2.0), 2, 1000, 2026);
  if (!v2.violated() || !v2.witness) {
    ok = false;
    detail = "power:2 not falsified";
  } else {
    const auto& w = *v2.witness;
    const auto lw = loewner_leq(apply_fun(w.a, ScalarFunction::power(2.0)),
                                apply_fun(w.b, ScalarFunction::power(2.0)), 1e-9);
    if (lw.holds || lw.min_eigenvalue > -1e-6 ||
        std::abs(lw.min_eigenvalue - w.offending_eigenvalue) > 1e-12) {
      ok = false;
      detail = "witness re-validation failed";
    }
  }

  if (ok) {
    const ScalarFunction monotone[] = {ScalarFunction::sqrt(), ScalarFunction::ratio(),
                                       ScalarFunction::log1p(), ScalarFunction::power(0.5)};
    for (const auto& f : monotone) {
      for (int dim = 1; dim <= 8 && ok; ++dim) {
        const Verdict v = test_monotonicity(f, dim, 1000, mix_seed(2027, dim));
        if (v.violated()) {
          ok = false;
          detail = f.name() + " falsely violated at dim " + std::to_string(dim);
        }
      }
    }
  }

  const double dt = seconds_since(t0);
  report(6, "monotonicity lab (power:2 falsified; monotone catalog clean at 1000 samples)",
         ok && dt < 60.0, dt, detail);
}

// ---- criterion 7 -------------------------------------------------------

void criterion_7() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  const std::pair<double, double> cases[] = {{2.0, 2.0}, {4.0, 1.5}};
  for (const auto& [q, r] : cases) {
    const auto rep = prop31_counterexample(q, r, 3, 500, 777);
    for (const auto& link : rep.links)
      if (link.violated()) {
        ok = false;
        detail = "proof link violated at q=" + std::to_string(q);
      }
    if (!rep.monotonicity.violated()) {
      ok = false;
      detail = "monotonicity not violated at r=" + std::to_string(r);
    }
  }
  const double dt = seconds_since(t0);
  report(7, "non-characterization report for (q,r) = (2,2) and (4,1.5), 500 samples", ok && dt < 60.0,
         dt, detail);
}

// ---- criterion 8 -------------------------------------------------------

void criterion_8() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (int i = 0; i < 100 && ok; ++i) {
    const int dim = 1 + (i % 6);
    const SymMatrix a = random_spd(dim, mix_seed(80'000, 2 * i), 0.1, 10.0);
    const SymMatrix b = random_spd(dim, mix_seed(80'000, 2 * i + 1), 0.1, 10.0);
    const SymMatrix geom = matrix_mean(MeanSpec::geometric(), a, b);
    const SymMatrix near = matrix_mean(MeanSpec::kubo_ando_power(1e-6), a, b);
    if (max_abs_diff(near, geom) > 1e-4 * (1.0 + geom.max_abs())) {
      ok = false;
      detail = "limit gap too large at instance " + std::to_string(i);
    }
  }
  report(8, "p -> 0 limit: P(1e-6, A, B) approaches the geometric mean (100 pairs)", ok,
         seconds_since(t0), detail);
}

// ---- criterion 9 -------------------------------------------------------

struct CliRun {
  int exit_code = -1;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  CliRun res;
  const std::string cmd = g_cli_path + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return res;
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, n);
  const int rc = pclose(pipe);
  res.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return res;
}

bool matrices_roundtrip(const json& node) {
  if (node.is_object() && node.contains("dim") && node.contains("rows")) {
    const json reparsed = json::parse(node.dump());
    return matrix_from_json(node).entries() == matrix_from_json(reparsed).entries();
  }
  if (node.is_structured())
    for (const auto& child : node)
      if (!matrices_roundtrip(child)) return false;
  return true;
}

void criterion_9() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  const auto tmp = std::filesystem::temp_directory_path();
  const auto a_path = tmp / "meanlab_acc_a.json";
  const auto x_path = tmp / "meanlab_acc_x.json";
  const auto y_path = tmp / "meanlab_acc_y.json";
  std::ofstream(a_path) << R"({"dim":2,"rows":[[2.0,1.0],[1.0,1.0]]})";
  std::ofstream(x_path) << R"({"dim":1,"rows":[[1.0]]})";
  std::ofstream(y_path) << R"({"dim":1,"rows":[[1.5]]})";

  try {
    {
      const auto r = run_cli("mean --kind arith -A " + a_path.string() + " -B " + a_path.string());
      const json rep = json::parse(r.out);
      const json& m = rep["outputs"]["result"];
      if (r.exit_code != 0 || m["rows"][0][0].get<double>() != 2.0 ||
          m["rows"][0][1].get<double>() != 1.0 || m["rows"][1][1].get<double>() != 1.0 ||
          !matrices_roundtrip(rep)) {
        ok = false;
        detail = "mean golden run failed";
      }
    }
    if (ok) {
      const auto r =
          run_cli("inverse --problem sqrt-arith -X " + x_path.string() + " -Y " + y_path.string());
      const json rep = json::parse(r.out);
      const double a_val = rep["outputs"]["A"]["rows"][0][0].get<double>();
      const double b_val = rep["outputs"]["B"]["rows"][0][0].get<double>();
      if (r.exit_code != 0 || std::abs(a_val - 2.9142136) > 1e-6 ||
          std::abs(b_val - 0.0857864) > 1e-6 || !matrices_roundtrip(rep)) {
        ok = false;
        detail = "inverse golden run failed";
      }
    }
    if (ok) {
      const auto r = run_cli("falsify --function power:2 --dim 2 --samples 100 --seed 7");
      const json rep = json::parse(r.out);
      if (r.exit_code != 1 || !rep["outputs"]["verdict"].contains("witness") ||
          !matrices_roundtrip(rep)) {
        ok = false;
        detail = "falsify golden run failed";
      }
    }
    if (ok) {
      const auto bad = run_cli("mean --kind arith -A '{\"dim\":2,\"rows\":[[1,0],[5,1]]}' -B " +
                               a_path.string());
      if (bad.exit_code != 2) {
        ok = false;
        detail = "asymmetric input did not exit 2";
      }
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }

  report(9, "CLI contract: golden reports, exit codes, lossless matrix round-trip", ok,
         seconds_since(t0), detail);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_cli_path = argv[1];
  if (g_cli_path.empty()) {
    std::fprintf(stderr, "usage: acceptance /path/to/meanlab\n");
    return 2;
  }

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();

  std::printf("%s: %d criterion failure(s)\n", g_failures == 0 ? "ACCEPTED" : "REJECTED",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
