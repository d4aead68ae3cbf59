#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tpsctl/cbn.hpp"
#include "tpsctl/graph.hpp"
#include "tpsctl/intervention.hpp"
#include "tpsctl/policy_search.hpp"

namespace tpsctl {

/// Outer/inner optimization pairs over driver sets and class-infinity policies.
enum class Objective { MinMin, MaxMax, MinMax, MaxMin };

/// "min-min", "max-max", "min-max", "max-min".
std::string to_string(Objective objective);
Objective parse_objective(const std::string& text);

/// Structure-level control task: which nodes may be intervened on, which
/// target realization is sought, and how it is to be extremized.
class ControlProblem {
 public:
  ControlProblem(Dag dag, NodeSet intervenable, Assignment desired, Objective objective);

  const Dag& dag() const noexcept { return dag_; }
  const NodeSet& intervenable() const noexcept { return intervenable_; }
  const NodeSet& targets() const noexcept { return targets_; }
  const Assignment& desired() const noexcept { return desired_; }
  Objective objective() const noexcept { return objective_; }

  /// targets ∩ intervenable.
  NodeSet intervenable_targets() const { return set_intersection(targets_, intervenable_); }

 private:
  Dag dag_;
  NodeSet intervenable_;
  NodeSet targets_;
  Assignment desired_;
  Objective objective_;
};

enum class Provenance { CStar, ExhaustiveOracle, Shortcut };
std::string to_string(Provenance provenance);

struct DriverSet {
  NodeSet members;
  Provenance provenance = Provenance::CStar;
};

struct SolveResult {
  DriverSet drivers;
  /// Witness policies; present only when a parametrization was supplied.
  std::optional<InterventionPair> pair;
  /// Optimal probability; absent for a structural-only answer.
  std::optional<double> value;

  bool structural_only() const noexcept { return !value.has_value(); }
};

/// Backward chaining from the targets, cut at intervenable nodes; the cut
/// points form the driver set. Needs no parametrization.
DriverSet c_star(const ControlProblem& problem);

/// Scopes prescribed by `cls` for each driver.
std::map<NodeIndex, NodeSet> class_scopes(const Dag& dag, const NodeSet& drivers, IpClass cls);

struct PolicyValue {
  double value;
  InterventionPair witness;
};

/// Exact optimum of P(desired | do[drivers; ip]) over all class-`cls`
/// policies on `drivers`, with the lexicographically smallest optimal
/// deterministic policy as witness.
PolicyValue optimal_policy_value(const Cbn& cbn, const NodeSet& drivers, IpClass cls,
                                 const Assignment& desired, Direction direction,
                                 std::uint64_t budget = kDefaultSearchBudget);

/// Same optimum without building a witness.
double optimal_value(const Cbn& cbn, const NodeSet& drivers, IpClass cls, const Assignment& desired,
                     Direction direction, std::uint64_t budget = kDefaultSearchBudget);

/// Answers one of the four objectives.
///
/// max-max and (without intervenable targets) min-min use C* with a
/// class-infinity policy optimization; min-min with an intervenable target
/// forces the first such target off its desired value; min-max and max-min
/// are solved by the empty set at the un-intervened probability.
SolveResult solve(const ControlProblem& problem, const Cbn* cbn,
                  std::uint64_t budget = kDefaultSearchBudget);

struct AdversarialInstance {
  Cbn cbn;
  Assignment desired;
};

/// Binary parametrization under which `drivers` cannot be shrunk: drivers
/// sit at 0 whatever their parents; every descendant of the drivers is the
/// AND of its parents that are drivers or descendants of drivers; targets
/// outside the drivers' descendants are fixed at 1; all remaining nodes are
/// fair coins. The desired event is every target at 1.
AdversarialInstance usm_adversarial_cbn(const Dag& dag, const NodeSet& drivers,
                                        const NodeSet& targets);

/// Limits applied by the exhaustive oracles.
inline constexpr std::size_t kMaxOracleIntervenable = 10;
inline constexpr std::uint64_t kMaxOracleStates = std::uint64_t{1} << 14;

/// Throws BudgetError when an exhaustive subset oracle would exceed the
/// limits above.
void check_oracle_budget(const Cbn& cbn, const NodeSet& intervenable);

struct SubsetOptimum {
  NodeSet subset;
  double value;
};

/// Best class-`cls` optimum over every subset of `intervenable`, ties going
/// to the subset enumerated first (ascending bitmask).
SubsetOptimum best_over_subsets(const Cbn& cbn, const NodeSet& intervenable, IpClass cls,
                                const Assignment& desired, Direction direction,
                                std::uint64_t budget = kDefaultSearchBudget);

}  // namespace tpsctl
