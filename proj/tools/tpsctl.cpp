// Command-line front end: drivers, eval, solve, verify, usm, random.
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tpsctl/error.hpp"
#include "tpsctl/network_file.hpp"
#include "tpsctl/report.hpp"

namespace {

std::string echo(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) out += ' ';
    out += argv[i];
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace tpsctl;

  CLI::App app{"Driver-set identification and policy optimization for causal Bayesian networks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tpsctl 0.1.0");

  std::string path, out, objective = "max-max", suite = "all";
  std::vector<std::string> classes;
  std::uint64_t seed = 0, budget = kDefaultSearchBudget, grid_budget = VerifyOptions{}.grid_budget;
  std::size_t nodes = 0;
  bool subsets = false;

  auto* drivers = app.add_subcommand("drivers", "Print the C* driver set and its backward-chaining trace");
  drivers->add_option("file", path, "Network file")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate P(desired | do[policies]) for the file's policies");
  eval->add_option("file", path, "Network file")->required();

  auto* solve = app.add_subcommand("solve", "Solve one of the four control objectives");
  solve->add_option("file", path, "Network file")->required();
  solve->add_option("--objective", objective, "min-min, max-max, min-max or max-min")->capture_default_str();
  solve->add_option("--budget", budget, "Policy search budget (relaxations)")->capture_default_str();
  solve->add_flag("--subsets", subsets, "Also print the inner optimum of every intervenable subset");

  auto* verify = app.add_subcommand("verify", "Check the controllability properties by exhaustive search");
  verify->add_option("file", path, "Network file")->required();
  verify->add_option("--suite", suite, "lemma3, sufficiency, usm, extremality, minimax, minmin or all")
      ->capture_default_str();
  auto* seed_opt = verify->add_option("--seed", seed, "Seed for a random parametrization and grid sampling");
  verify->add_option("--budget", budget, "Policy search budget (relaxations)")->capture_default_str();
  verify->add_option("--grid-budget", grid_budget, "Stochastic grid points per driver set and class")
      ->capture_default_str();
  verify->add_option("--classes", classes, "Policy classes for lemma3 (default 1 2 inf)");

  auto* usm = app.add_subcommand("usm", "Write the adversarial parametrization for C*'s drivers");
  usm->add_option("file", path, "Network file")->required();
  usm->add_option("--out", out, "Output network file")->required();

  auto* random = app.add_subcommand("random", "Write a seeded random network");
  random->add_option("--seed", seed, "Random seed")->required();
  random->add_option("--nodes", nodes, "Node count (default: drawn from 3..6)")->check(CLI::Range(1, 20));
  random->add_option("--out", out, "Output network file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  const std::string command = echo(argc, argv);
  try {
    Report report;
    if (*drivers) {
      report = cmd_drivers(load_network(path), command);
    } else if (*eval) {
      report = cmd_eval(load_network(path), command);
    } else if (*solve) {
      report = cmd_solve(load_network(path), {parse_objective(objective), budget, subsets}, command);
    } else if (*verify) {
      VerifyRequest req;
      req.suite = parse_suite(suite);
      req.options.search_budget = budget;
      req.options.grid_budget = grid_budget;
      if (!classes.empty()) {
        req.options.lemma3_classes.clear();
        for (const auto& c : classes) req.options.lemma3_classes.push_back(IpClass::parse(c));
      }
      if (*seed_opt) req.seed = seed;
      report = cmd_verify(load_network(path), req, command);
    } else if (*usm) {
      report = cmd_usm(load_network(path), out, command);
    } else {
      RandomNetworkOptions options;
      if (nodes > 0) options.min_nodes = options.max_nodes = nodes;
      report = cmd_random(seed, options, out, command);
    }
    std::cout << report.text;
    return report.exit_code;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << " (required budget estimate: " << e.required() << ")\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
