#include "tpsctl/controllability.hpp"

#include <algorithm>

#include "tpsctl/error.hpp"

namespace tpsctl {

std::string to_string(Objective objective) {
  switch (objective) {
    case Objective::MinMin: return "min-min";
    case Objective::MaxMax: return "max-max";
    case Objective::MinMax: return "min-max";
    case Objective::MaxMin: return "max-min";
  }
  return "?";
}

Objective parse_objective(const std::string& text) {
  if (text == "min-min") return Objective::MinMin;
  if (text == "max-max") return Objective::MaxMax;
  if (text == "min-max") return Objective::MinMax;
  if (text == "max-min") return Objective::MaxMin;
  throw ValidationError("unknown objective '" + text +
                        "' (expected min-min, max-max, min-max or max-min)");
}

std::string to_string(Provenance provenance) {
  switch (provenance) {
    case Provenance::CStar: return "c-star";
    case Provenance::ExhaustiveOracle: return "exhaustive-oracle";
    case Provenance::Shortcut: return "shortcut";
  }
  return "?";
}

ControlProblem::ControlProblem(Dag dag, NodeSet intervenable, Assignment desired, Objective objective)
    : dag_(std::move(dag)),
      intervenable_(canonical(std::move(intervenable))),
      desired_(std::move(desired)),
      objective_(objective) {
  for (NodeIndex v : intervenable_) dag_.check_node(v);
  if (desired_.empty()) throw ValidationError("a control problem needs at least one target");
  for (const auto& [t, _] : desired_) {
    dag_.check_node(t);
    targets_.push_back(t);
  }
}

DriverSet c_star(const ControlProblem& problem) {
  return {backward_chain(problem.dag(), problem.targets(), problem.intervenable()).terminals,
          Provenance::CStar};
}

std::map<NodeIndex, NodeSet> class_scopes(const Dag& dag, const NodeSet& drivers, IpClass cls) {
  std::map<NodeIndex, NodeSet> scopes;
  for (NodeIndex d : drivers) scopes.emplace(d, scope_for_class(dag, d, cls));
  return scopes;
}

PolicyValue optimal_policy_value(const Cbn& cbn, const NodeSet& drivers, IpClass cls,
                                 const Assignment& desired, Direction direction,
                                 std::uint64_t budget) {
  const auto scopes = class_scopes(cbn.dag(), canonical(drivers), cls);
  PolicySearch search(cbn, scopes, desired);
  const auto opt = search.optimal_policy(direction, budget);
  PolicyValue out{opt.value, {}};
  for (const auto& [driver, choices] : opt.choices) {
    std::size_t row = 0;
    out.witness.add(deterministic_policy(cbn.dag(), cbn.cards(), driver, scopes.at(driver),
                                         [&](std::span<const std::size_t>) { return choices[row++]; }));
  }
  return out;
}

double optimal_value(const Cbn& cbn, const NodeSet& drivers, IpClass cls, const Assignment& desired,
                     Direction direction, std::uint64_t budget) {
  PolicySearch search(cbn, class_scopes(cbn.dag(), canonical(drivers), cls), desired);
  return search.optimal_value(direction, budget);
}

SolveResult solve(const ControlProblem& problem, const Cbn* cbn, std::uint64_t budget) {
  if (cbn != nullptr) {
    if (!(cbn->dag() == problem.dag()))
      throw ValidationError("parametrization does not match the problem's graph");
    validate_assignment(cbn->dag(), cbn->cards(), problem.desired());
  }

  SolveResult result;
  switch (problem.objective()) {
    case Objective::MinMax:
    case Objective::MaxMin:
      result.drivers = {{}, Provenance::Shortcut};
      if (cbn != nullptr) {
        result.pair = InterventionPair{};
        result.value = marginal_prob(*cbn, problem.desired());
      }
      return result;

    case Objective::MinMin:
      if (const NodeSet hit = problem.intervenable_targets(); !hit.empty()) {
        const NodeIndex target = hit.front();
        result.drivers = {{target}, Provenance::Shortcut};
        if (cbn != nullptr) {
          const std::size_t off = problem.desired().at(target) == 0 ? 1 : 0;
          InterventionPair pair;
          pair.add(atomic_policy(target, off, cbn->card(target)));
          result.value = interventional_prob(*cbn, pair, problem.desired());
          result.pair = std::move(pair);
        }
        return result;
      }
      [[fallthrough]];

    case Objective::MaxMax: {
      result.drivers = c_star(problem);
      if (cbn != nullptr) {
        const Direction dir =
            problem.objective() == Objective::MaxMax ? Direction::Max : Direction::Min;
        auto pv = optimal_policy_value(*cbn, result.drivers.members, IpClass::infinite(),
                                       problem.desired(), dir, budget);
        result.value = pv.value;
        result.pair = std::move(pv.witness);
      }
      return result;
    }
  }
  return result;
}

AdversarialInstance usm_adversarial_cbn(const Dag& dag, const NodeSet& drivers,
                                        const NodeSet& targets) {
  const NodeSet ds = canonical(drivers);
  const NodeSet ts = canonical(targets);
  for (NodeIndex v : ds) dag.check_node(v);
  for (NodeIndex v : ts) dag.check_node(v);

  NodeSet downstream;
  for (NodeIndex d : ds) downstream = set_union(downstream, descendants(dag, d));
  const NodeSet driven = set_union(ds, downstream);

  const std::vector<std::size_t> cards(dag.size(), 2);
  std::vector<Cpd> cpds;
  cpds.reserve(dag.size());
  for (NodeIndex v = 0; v < dag.size(); ++v) {
    const NodeSet& ps = dag.parents(v);
    const std::vector<std::size_t> pcards(ps.size(), 2);
    if (contains(ds, v)) {
      cpds.push_back(Cpd::deterministic(v, 2, ps, pcards, [](auto) { return std::size_t{0}; }));
    } else if (contains(downstream, v)) {
      std::vector<bool> gate(ps.size());
      for (std::size_t i = 0; i < ps.size(); ++i) gate[i] = contains(driven, ps[i]);
      cpds.push_back(Cpd::deterministic(v, 2, ps, pcards, [&](std::span<const std::size_t> cfg) {
        for (std::size_t i = 0; i < cfg.size(); ++i)
          if (gate[i] && cfg[i] == 0) return std::size_t{0};
        return std::size_t{1};
      }));
    } else if (contains(ts, v)) {
      cpds.push_back(Cpd::deterministic(v, 2, ps, pcards, [](auto) { return std::size_t{1}; }));
    } else {
      std::vector<double> table(std::size_t{2} << ps.size(), 0.5);
      cpds.push_back(Cpd(v, 2, ps, pcards, std::move(table)));
    }
  }
  Assignment desired;
  for (NodeIndex t : ts) desired[t] = 1;
  return {Cbn(dag, cards, std::move(cpds)), std::move(desired)};
}

void check_oracle_budget(const Cbn& cbn, const NodeSet& intervenable) {
  if (intervenable.size() > kMaxOracleIntervenable)
    throw BudgetError("exhaustive subset oracle refused: " + std::to_string(intervenable.size()) +
                          " intervenable nodes (limit " + std::to_string(kMaxOracleIntervenable) +
                          "), needs " + std::to_string(std::uint64_t{1} << std::min<std::size_t>(intervenable.size(), 63)) +
                          " subsets",
                      std::uint64_t{1} << std::min<std::size_t>(intervenable.size(), 63));
  if (cbn.state_count() > kMaxOracleStates)
    throw BudgetError("exhaustive subset oracle refused: state space of " +
                          std::to_string(cbn.state_count()) + " exceeds " +
                          std::to_string(kMaxOracleStates),
                      cbn.state_count());
}

SubsetOptimum best_over_subsets(const Cbn& cbn, const NodeSet& intervenable, IpClass cls,
                                const Assignment& desired, Direction direction,
                                std::uint64_t budget) {
  const NodeSet vi = canonical(intervenable);
  check_oracle_budget(cbn, vi);
  SubsetOptimum best{{}, 0.0};
  bool first = true;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vi.size()); ++mask) {
    NodeSet subset;
    for (std::size_t i = 0; i < vi.size(); ++i)
      if (mask >> i & 1U) subset.push_back(vi[i]);
    const double v = optimal_value(cbn, subset, cls, desired, direction, budget);
    const bool better = direction == Direction::Max ? v > best.value + 1e-12 : v < best.value - 1e-12;
    if (first || better) {
      best = {std::move(subset), v};
      first = false;
    }
  }
  return best;
}

}  // namespace tpsctl
