#include "tpsctl/report.hpp"

#include <sstream>

#include "tpsctl/error.hpp"
#include "tpsctl/format.hpp"

namespace tpsctl {

namespace {

std::string event_text(const Dag& dag, const Assignment& desired) {
  return format_assignment(dag, desired);
}

void print_header(std::ostringstream& os, const NetworkFile& file, const std::string& command) {
  os << "command: " << command << "\n";
  os << "targets: " << event_text(file.dag, file.targets) << "\n";
  os << "intervenable: " << format_set(file.dag, file.intervenable) << "\n";
}

Direction inner_direction(Objective objective) {
  return objective == Objective::MaxMax || objective == Objective::MinMax ? Direction::Max
                                                                          : Direction::Min;
}

void print_checks(std::ostringstream& os, const std::vector<Check>& checks) {
  for (const Check& c : checks) {
    os << (c.pass ? "PASS " : "FAIL ") << c.property << "\n";
    if (!c.detail.empty()) os << "     " << c.detail << "\n";
  }
}

}  // namespace

Report cmd_drivers(const NetworkFile& file, const std::string& command) {
  const ControlProblem problem = file.problem(Objective::MaxMax);
  const BackwardChain bc = backward_chain(file.dag, problem.targets(), file.intervenable);
  std::ostringstream os;
  print_header(os, file, command);
  os << "drivers: " << format_set(file.dag, bc.terminals) << "\n";
  os << "trace:\n";
  for (NodeIndex v : bc.visited) {
    os << "  " << file.dag.name(v) << " ";
    if (contains(bc.terminals, v))
      os << "terminal (intervenable)";
    else if (file.dag.parents(v).empty())
      os << "root";
    else
      os << "expanded";
    os << "\n";
  }
  const NodeSet untouched = set_difference(file.intervenable, bc.visited);
  os << "intervenable not reached: " << format_set(file.dag, untouched) << "\n";
  return {os.str(), kExitOk};
}

Report cmd_eval(const NetworkFile& file, const std::string& command) {
  const Cbn& cbn = file.require_cbn();
  if (file.targets.empty()) throw ValidationError("eval needs at least one target line");
  const double p = interventional_prob(cbn, file.policies, file.targets);
  std::ostringstream os;
  os << "command: " << command << "\n";
  os << "policies:" << (file.policies.empty() ? " none\n" : "\n");
  os << format_pair(file.dag, file.policies, "  ");
  os << "P(" << event_text(file.dag, file.targets);
  if (!file.policies.empty()) os << " | do" << format_set(file.dag, file.policies.targets());
  os << ") = " << format_probability(p) << "\n";
  return {os.str(), kExitOk};
}

Report cmd_solve(const NetworkFile& file, const SolveOptions& options, const std::string& command) {
  const ControlProblem problem = file.problem(options.objective);
  const Cbn* cbn = file.cbn ? &*file.cbn : nullptr;
  const SolveResult r = solve(problem, cbn, options.budget);
  std::ostringstream os;
  print_header(os, file, command);
  os << "objective: " << to_string(options.objective) << "\n";
  os << "drivers: " << format_set(file.dag, r.drivers.members) << "\n";
  os << "provenance: " << to_string(r.drivers.provenance) << "\n";
  os << "value: " << (r.value ? format_probability(*r.value) : std::string("structural-only")) << "\n";
  if (r.pair) {
    os << "witness:" << (r.pair->empty() ? " none\n" : "\n");
    os << format_pair(file.dag, *r.pair, "  ");
  }
  if (options.subsets) {
    if (cbn == nullptr) throw ValidationError("--subsets needs a parametrization (cpd lines)");
    check_oracle_budget(*cbn, file.intervenable);
    const Direction dir = inner_direction(options.objective);
    os << "subsets (class-inf " << (dir == Direction::Max ? "max" : "min") << "):\n";
    const NodeSet& vi = file.intervenable;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vi.size()); ++mask) {
      NodeSet x;
      for (std::size_t i = 0; i < vi.size(); ++i)
        if (mask >> i & 1U) x.push_back(vi[i]);
      const double v = optimal_value(*cbn, x, IpClass::infinite(), file.targets, dir, options.budget);
      os << "  " << format_set(file.dag, x) << " " << format_probability(v) << "\n";
    }
  }
  return {os.str(), kExitOk};
}

Report cmd_verify(const NetworkFile& file, const VerifyRequest& request, const std::string& command) {
  std::ostringstream os;
  print_header(os, file, command);
  VerifyOptions options = request.options;
  if (request.seed) options.seed = *request.seed;
  os << "seed: " << options.seed << "\n";

  std::optional<Cbn> drawn;
  const bool needs_cbn = request.suite != Suite::Usm;
  if (needs_cbn && !file.cbn) {
    if (!request.seed)
      throw ValidationError("file has no cpd lines; pass --seed to draw a random parametrization");
    Rng rng(*request.seed);
    drawn = random_parametrization(file.dag, file.cards, rng);
    os << "parametrization: random (seed " << *request.seed << ")\n";
  } else if (needs_cbn) {
    os << "parametrization: file\n";
  }

  std::vector<Check> checks;
  auto run = [&](Suite s) {
    if (s == Suite::Usm) {
      NodeSet targets;
      for (const auto& [t, _] : file.targets) targets.push_back(t);
      auto c = verify_usm(file.dag, file.intervenable, targets, options);
      checks.insert(checks.end(), c.begin(), c.end());
      return;
    }
    const Instance in{drawn ? *drawn : *file.cbn, file.intervenable, file.targets};
    std::vector<Check> c;
    switch (s) {
      case Suite::Lemma3: c = verify_lemma3(in, options); break;
      case Suite::Sufficiency: c = verify_sufficiency(in, options); break;
      case Suite::Extremality: c = verify_extremality(in, options); break;
      case Suite::Minimax: c = verify_minimax(in, options); break;
      case Suite::MinMin: c = verify_min_min(in, options); break;
      default: break;
    }
    checks.insert(checks.end(), c.begin(), c.end());
  };
  if (request.suite == Suite::All) {
    for (Suite s : {Suite::Lemma3, Suite::Sufficiency, Suite::Usm, Suite::Extremality, Suite::Minimax,
                    Suite::MinMin})
      run(s);
  } else {
    run(request.suite);
  }
  print_checks(os, checks);
  const bool ok = all_pass(checks);
  os << "verdict: " << (ok ? "PASS" : "FAIL") << "\n";
  return {os.str(), ok ? kExitOk : kExitVerifyFailed};
}

Report cmd_usm(const NetworkFile& file, const std::filesystem::path& out, const std::string& command) {
  const ControlProblem problem = file.problem(Objective::MaxMax);
  const NodeSet drivers = c_star(problem).members;
  AdversarialInstance adv = usm_adversarial_cbn(file.dag, drivers, problem.targets());
  NetworkFile result{file.dag, adv.cbn.cards(), file.intervenable, adv.desired, std::move(adv.cbn), {}};
  save_network(result, out);
  std::ostringstream os;
  print_header(os, file, command);
  os << "drivers: " << format_set(file.dag, drivers) << "\n";
  os << "desired: " << event_text(file.dag, result.targets) << "\n";
  os << "wrote: " << out.string() << "\n";
  return {os.str(), kExitOk};
}

Report cmd_random(std::uint64_t seed, const RandomNetworkOptions& options,
                  const std::filesystem::path& out, const std::string& command) {
  RandomNetwork net = random_network(seed, options);
  NetworkFile file{net.cbn.dag(), net.cbn.cards(), net.intervenable, net.desired, net.cbn, {}};
  save_network(file, out);
  std::ostringstream os;
  os << "command: " << command << "\n";
  os << "seed: " << seed << "\n";
  os << "nodes: " << file.dag.size() << ", edges: " << file.dag.edge_count() << "\n";
  os << "wrote: " << out.string() << "\n";
  return {os.str(), kExitOk};
}

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const BudgetError*>(&e) != nullptr) return kExitBudget;
  return kExitInvalid;
}

}  // namespace tpsctl
