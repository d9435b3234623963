// meanlab command line: matrix means, inverse mean problems, spectral
// chains, and the randomized verification lab. Reports are single JSON
// documents on stdout; diagnostics go to stderr.
//
// Exit codes: 0 success/holds, 1 property violated or hypothesis
// rejected (a full report is still emitted), 2 input error.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "meanlab/errors.hpp"
#include "meanlab/functional.hpp"
#include "meanlab/inverse_solvers.hpp"
#include "meanlab/json_io.hpp"
#include "meanlab/means.hpp"
#include "meanlab/verify_lab.hpp"

using nlohmann::json;
using namespace meanlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitInputError = 2;

int thread_cap() {
  const char* env = std::getenv("MEANLAB_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == nullptr || *end != '\0' || v < 1)
    throw InvalidInput("MEANLAB_THREADS must be an integer >= 1");
  return static_cast<int>(v);
}

ScalarFunction parse_function_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string name = spec.substr(0, colon);
  std::optional<double> param;
  if (colon != std::string::npos) {
    try {
      param = std::stod(spec.substr(colon + 1));
    } catch (const std::exception&) {
      throw InvalidInput("function parameter is not a number: " + spec);
    }
  }
  if (name == "power") {
    if (!param) throw InvalidInput("power needs a parameter, e.g. power:2");
    return ScalarFunction::power(*param);
  }
  if (name == "reppower") {
    if (!param) throw InvalidInput("reppower needs a parameter, e.g. reppower:0.5");
    return ScalarFunction::representing_power(*param);
  }
  if (param) throw InvalidInput("function " + name + " takes no parameter");
  if (name == "sqrt") return ScalarFunction::sqrt();
  if (name == "log1p") return ScalarFunction::log1p();
  if (name == "ratio") return ScalarFunction::ratio();
  if (name == "identity") return ScalarFunction::identity();
  throw InvalidInput("unknown function: " + spec +
                     " (expected power:r, reppower:p, sqrt, log1p, ratio, identity)");
}

json witness_json(const Witness& w) {
  return json{{"A", matrix_to_json(w.a)},
              {"B", matrix_to_json(w.b)},
              {"link", w.link},
              {"offending_eigenvalue", w.offending_eigenvalue},
              {"eigenvector", w.eigenvector},
              {"sample_index", w.sample_index},
              {"sample_seed", w.sample_seed}};
}

json verdict_json(const Verdict& v) {
  json j{{"status", to_string(v.status)}, {"samples_run", v.samples_run}};
  if (v.witness) j["witness"] = witness_json(*v.witness);
  return j;
}

json solution_json(const InverseSolution& sol) {
  return json{{"status", "solved"},
              {"A", matrix_to_json(sol.a)},
              {"B", matrix_to_json(sol.b)},
              {"residual_X", sol.residual_x},
              {"residual_Y", sol.residual_y},
              {"condition", sol.condition}};
}

json chain_json(const ChainWitness& cw) {
  json elements = json::array();
  for (const auto& z : cw.elements) elements.push_back(matrix_to_json(z));
  json links = json::array();
  for (const auto& link : cw.links) {
    json l{{"ratio_ok", link.ratio_ok}};
    if (link.solution) {
      l["residual_X"] = link.solution->residual_x;
      l["residual_Y"] = link.solution->residual_y;
      l["condition"] = link.solution->condition;
    }
    links.push_back(std::move(l));
  }
  return json{{"status", "solved"},
              {"gamma0", cw.gamma0},
              {"length", cw.elements.size()},
              {"trailing_power", cw.trailing_power},
              {"elements", std::move(elements)},
              {"links", std::move(links)}};
}

struct CommandResult {
  json outputs;
  int exit_code = kExitOk;
};

json characterization_json(const std::string& fn, const std::string& hyp,
                           const CharacterizationReport& rep) {
  return json{{"function", fn},
              {"hypothesis", hyp},
              {"inequality", verdict_json(rep.inequality)},
              {"monotonicity", verdict_json(rep.monotonicity)},
              {"consistent", rep.consistent}};
}

// ---- subcommand handlers ----------------------------------------------

struct MeanArgs {
  std::string kind;
  double p = 1.0;
  bool p_set = false;
  std::string file_a, file_b;
};

CommandResult run_mean(const MeanArgs& args) {
  const SymMatrix a = parse_matrix_file(args.file_a);
  const SymMatrix b = parse_matrix_file(args.file_b);

  MeanSpec spec = MeanSpec::arithmetic();
  if (args.kind == "ka") {
    if (!args.p_set) throw InvalidInput("mean --kind ka requires --p");
    spec = MeanSpec::kubo_ando_power(args.p);
  } else if (args.kind == "naive") {
    if (!args.p_set) throw InvalidInput("mean --kind naive requires --p");
    spec = MeanSpec::naive_power(args.p);
  } else if (args.kind == "geom") {
    spec = MeanSpec::geometric();
  } else if (args.kind == "arith") {
    spec = MeanSpec::arithmetic();
  } else if (args.kind == "min") {
    spec = MeanSpec::min_mean();
  } else {
    throw InvalidInput("unknown mean kind: " + args.kind);
  }

  CommandResult res;
  res.outputs = json{{"kind", spec.name()}, {"result", matrix_to_json(matrix_mean(spec, a, b))}};
  return res;
}

struct InverseArgs {
  std::string problem;
  double p = 0.0, q = 0.0;
  bool p_set = false, q_set = false;
  std::string file_x, file_y;
};

CommandResult run_inverse(const InverseArgs& args) {
  const SymMatrix x = parse_matrix_file(args.file_x);
  const SymMatrix y = parse_matrix_file(args.file_y);

  CommandResult res;
  try {
    if (args.problem == "geom-power") {
      if (!args.p_set) throw InvalidInput("inverse --problem geom-power requires --p");
      res.outputs = solution_json(solve_geom_power(args.p, x, y));
    } else if (args.problem == "arith-power") {
      if (!args.p_set && !args.q_set)
        throw InvalidInput("inverse --problem arith-power requires --p or --q");
      const double r = args.q_set ? args.q : args.p;
      res.outputs = solution_json(solve_arith_power_local(r, x, y));
    } else if (args.problem == "sqrt-arith") {
      res.outputs = solution_json(solve_sqrt_arith(x, y));
    } else if (args.problem == "arith-quadratic") {
      res.outputs = solution_json(solve_arith_quadratic(x, y));
    } else {
      throw InvalidInput("unknown inverse problem: " + args.problem);
    }
  } catch (const HypothesisViolated& e) {
    res.outputs = json{{"status", "hypothesis-rejected"}, {"reason", e.what()}};
    res.exit_code = kExitViolated;
  }
  return res;
}

struct ChainArgs {
  double q = 2.0;
  std::optional<double> gamma0;
  std::string file_x, file_y;
};

CommandResult run_chain(const ChainArgs& args) {
  const SymMatrix x = parse_matrix_file(args.file_x);
  const SymMatrix y = parse_matrix_file(args.file_y);
  CommandResult res;
  try {
    res.outputs = chain_json(chain_solve_global(args.q, x, y, args.gamma0));
  } catch (const HypothesisViolated& e) {
    res.outputs = json{{"status", "hypothesis-rejected"}, {"reason", e.what()}};
    res.exit_code = kExitViolated;
  }
  return res;
}

struct VerifyArgs {
  std::string suite;
  double p = 0.5, q = 2.0;
  int dim = 4, samples = 500;
  std::uint64_t seed = 42;
};

CommandResult run_verify(const VerifyArgs& args, int threads) {
  CommandResult res;
  if (args.suite == "means") {
    const Verdict v = check_mean_inequalities(args.p, args.q, args.dim, args.samples, args.seed,
                                              threads);
    res.outputs = json{{"suite", "means"}, {"p", args.p}, {"q", args.q},
                       {"verdict", verdict_json(v)}};
    res.exit_code = v.violated() ? kExitViolated : kExitOk;
    return res;
  }

  if (args.suite == "characterization") {
    // Battery: an operator monotone function across the power-mean
    // hypotheses, plus the two instructive non-monotone cases. The
    // reverse-AGM hypothesis is left out here: the min mean can have
    // genuinely negative eigenvalues on random pairs, which puts
    // fractional-power functions outside their domain.
    json cases = json::array();
    bool all_consistent = true;
    auto add = [&](const ScalarFunction& f, const Hypothesis& hyp) {
      const auto rep = test_characterization(f, hyp, args.dim, args.samples, args.seed, threads);
      all_consistent = all_consistent && rep.consistent;
      cases.push_back(characterization_json(f.name(), hyp.name(), rep));
    };
    const ScalarFunction sqrt_fn = ScalarFunction::sqrt();
    add(sqrt_fn, Hypothesis::geom_vs_power(args.p));
    add(sqrt_fn, Hypothesis::power_vs_arith(args.p));
    add(sqrt_fn, Hypothesis::arith_vs_power(args.q));
    add(sqrt_fn, Hypothesis::naive_power_vs_arith(std::max(args.p, 0.5)));
    add(sqrt_fn, Hypothesis::arith_vs_naive_power(args.q));
    add(ScalarFunction::power(2.0), Hypothesis::arith_vs_power(args.q));
    if (args.q >= 1.5)
      add(ScalarFunction::power(1.5), Hypothesis::arith_vs_naive_power(args.q));

    res.outputs = json{{"suite", "characterization"}, {"cases", std::move(cases)},
                       {"all_consistent", all_consistent}};
    res.exit_code = all_consistent ? kExitOk : kExitViolated;
    return res;
  }

  if (args.suite == "prop31") {
    // r rides on --p when it lies in (1, min{2, q}]; otherwise min{2, q}.
    const double r = (args.p > 1.0 && args.p <= std::min(2.0, args.q)) ? args.p
                                                                       : std::min(2.0, args.q);
    const auto rep = prop31_counterexample(args.q, r, args.dim, args.samples, args.seed, threads);
    bool links_hold = true;
    json links = json::array();
    for (const auto& link : rep.links) {
      links_hold = links_hold && !link.violated();
      links.push_back(verdict_json(link));
    }
    const bool expected_shape = links_hold && rep.monotonicity.violated();
    res.outputs = json{{"suite", "prop31"},
                       {"q", rep.q},
                       {"r", rep.r},
                       {"links", std::move(links)},
                       {"monotonicity", verdict_json(rep.monotonicity)},
                       {"expected_shape", expected_shape}};
    res.exit_code = expected_shape ? kExitOk : kExitViolated;
    return res;
  }

  throw InvalidInput("unknown verify suite: " + args.suite);
}

struct FalsifyArgs {
  std::string function;
  int dim = 2, samples = 1000;
  std::uint64_t seed = 42;
};

CommandResult run_falsify(const FalsifyArgs& args, int threads) {
  const ScalarFunction f = parse_function_spec(args.function);
  const Verdict v = test_monotonicity(f, args.dim, args.samples, args.seed, threads);
  CommandResult res;
  res.outputs = json{{"function", f.name()}, {"verdict", verdict_json(v)}};
  res.exit_code = v.violated() ? kExitViolated : kExitOk;
  return res;
}

struct ExploreArgs {
  double p = 0.5, q = 2.0;
  std::string file_x, file_y;
  int iters = 200;
};

CommandResult run_explore(const ExploreArgs& args) {
  const SymMatrix x = parse_matrix_file(args.file_x);
  const SymMatrix y = parse_matrix_file(args.file_y);
  const auto r = explore_open_problem(args.p, args.q, x, y, args.iters);
  CommandResult res;
  res.outputs = json{{"status", r.solved ? "solved" : "not-solved"},
                     {"method", r.method},
                     {"iterations", r.iterations},
                     {"residual_X", r.residual_x},
                     {"residual_Y", r.residual_y},
                     {"A", matrix_to_json(r.a)},
                     {"B", matrix_to_json(r.b)}};
  res.exit_code = r.solved ? kExitOk : kExitViolated;
  return res;
}

std::string collect_input_digest(const std::string& command, const json& params) {
  return hex_digest(json{{"command", command}, {"params", params}}.dump());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meanlab: matrix power means, inverse mean problems, verification lab"};
  app.require_subcommand(1);

  MeanArgs mean_args;
  auto* mean_cmd = app.add_subcommand("mean", "Compute a matrix mean of two SPD matrices");
  mean_cmd->add_option("--kind", mean_args.kind, "ka|naive|geom|arith|min")->required();
  mean_cmd->add_option("--p", mean_args.p, "power parameter (ka, naive)")
      ->each([&](const std::string&) { mean_args.p_set = true; });
  mean_cmd->add_option("-A,--matrix-a", mean_args.file_a, "matrix file or inline JSON")->required();
  mean_cmd->add_option("-B,--matrix-b", mean_args.file_b, "matrix file or inline JSON")->required();

  InverseArgs inv_args;
  auto* inv_cmd = app.add_subcommand("inverse", "Solve an inverse mean problem for X <= Y");
  inv_cmd->add_option("--problem", inv_args.problem,
                      "geom-power|arith-power|sqrt-arith|arith-quadratic")
      ->required();
  inv_cmd->add_option("--p", inv_args.p, "exponent for geom-power / arith-power (p side)")
      ->each([&](const std::string&) { inv_args.p_set = true; });
  inv_cmd->add_option("--q", inv_args.q, "exponent for arith-power (q side)")
      ->each([&](const std::string&) { inv_args.q_set = true; });
  inv_cmd->add_option("-X,--matrix-x", inv_args.file_x, "matrix file or inline JSON")->required();
  inv_cmd->add_option("-Y,--matrix-y", inv_args.file_y, "matrix file or inline JSON")->required();

  ChainArgs chain_args;
  double chain_gamma0 = 0.0;
  auto* chain_cmd =
      app.add_subcommand("chain", "Chain-decompose X <= Y and solve every link at exponent q");
  chain_cmd->add_option("--q", chain_args.q, "exponent q > 1")->required();
  auto* g0_opt = chain_cmd->add_option("--gamma0", chain_gamma0, "chain ratio in (1, gamma(q))");
  chain_cmd->add_option("-X,--matrix-x", chain_args.file_x, "matrix file or inline JSON")
      ->required();
  chain_cmd->add_option("-Y,--matrix-y", chain_args.file_y, "matrix file or inline JSON")
      ->required();

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Run a randomized verification suite");
  verify_cmd->add_option("--suite", verify_args.suite, "means|characterization|prop31")
      ->required();
  verify_cmd->add_option("--p", verify_args.p, "lower exponent (r for prop31)");
  verify_cmd->add_option("--q", verify_args.q, "upper exponent");
  verify_cmd->add_option("--dim", verify_args.dim, "matrix dimension");
  verify_cmd->add_option("--samples", verify_args.samples, "sample count");
  verify_cmd->add_option("--seed", verify_args.seed, "master seed");

  FalsifyArgs falsify_args;
  auto* falsify_cmd =
      app.add_subcommand("falsify", "Search for an operator-monotonicity violation");
  falsify_cmd->add_option("--function", falsify_args.function,
                          "power:r|reppower:p|sqrt|log1p|ratio|identity")
      ->required();
  falsify_cmd->add_option("--dim", falsify_args.dim, "matrix dimension");
  falsify_cmd->add_option("--samples", falsify_args.samples, "sample count");
  falsify_cmd->add_option("--seed", falsify_args.seed, "master seed");

  ExploreArgs explore_args;
  auto* explore_cmd =
      app.add_subcommand("explore", "Numerical attempt at the general two-power inverse system");
  explore_cmd->add_option("--p", explore_args.p, "lower exponent in [1/2, 1]");
  explore_cmd->add_option("--q", explore_args.q, "upper exponent >= 1");
  explore_cmd->add_option("-X,--matrix-x", explore_args.file_x, "matrix file or inline JSON")
      ->required();
  explore_cmd->add_option("-Y,--matrix-y", explore_args.file_y, "matrix file or inline JSON")
      ->required();
  explore_cmd->add_option("--iters", explore_args.iters, "iteration cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInputError;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    const int threads = thread_cap();
    CommandResult result;
    std::string command;
    json params;

    if (mean_cmd->parsed()) {
      command = "mean";
      params = json{{"kind", mean_args.kind}, {"p", mean_args.p},
                    {"A", mean_args.file_a}, {"B", mean_args.file_b}};
      result = run_mean(mean_args);
    } else if (inv_cmd->parsed()) {
      command = "inverse";
      params = json{{"problem", inv_args.problem}, {"p", inv_args.p}, {"q", inv_args.q},
                    {"X", inv_args.file_x}, {"Y", inv_args.file_y}};
      result = run_inverse(inv_args);
    } else if (chain_cmd->parsed()) {
      command = "chain";
      if (g0_opt->count() > 0) chain_args.gamma0 = chain_gamma0;
      params = json{{"q", chain_args.q}, {"X", chain_args.file_x}, {"Y", chain_args.file_y}};
      if (chain_args.gamma0) params["gamma0"] = *chain_args.gamma0;
      result = run_chain(chain_args);
    } else if (verify_cmd->parsed()) {
      command = "verify";
      params = json{{"suite", verify_args.suite}, {"p", verify_args.p}, {"q", verify_args.q},
                    {"dim", verify_args.dim}, {"samples", verify_args.samples},
                    {"seed", verify_args.seed}};
      result = run_verify(verify_args, threads);
    } else if (falsify_cmd->parsed()) {
      command = "falsify";
      params = json{{"function", falsify_args.function}, {"dim", falsify_args.dim},
                    {"samples", falsify_args.samples}, {"seed", falsify_args.seed}};
      result = run_falsify(falsify_args, threads);
    } else if (explore_cmd->parsed()) {
      command = "explore";
      params = json{{"p", explore_args.p}, {"q", explore_args.q}, {"X", explore_args.file_x},
                    {"Y", explore_args.file_y}, {"iters", explore_args.iters}};
      result = run_explore(explore_args);
    }

    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    const json report{{"command", command},
                      {"inputs_digest", collect_input_digest(command, params)},
                      {"outputs", result.outputs},
                      {"elapsed_ms", elapsed.count()}};
    std::cout << report.dump(2) << "\n";
    return result.exit_code;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInputError;
  }
}
