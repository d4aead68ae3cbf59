#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tpsctl/cbn.hpp"
#include "tpsctl/controllability.hpp"
#include "tpsctl/intervention.hpp"
#include "tpsctl/policy_search.hpp"

namespace tpsctl {

enum class Suite { Lemma3, Sufficiency, Usm, Extremality, Minimax, MinMin, All };

std::string to_string(Suite suite);
Suite parse_suite(const std::string& text);

/// Outcome of one checked property. On failure `detail` names the
/// offending subset or policy.
struct Check {
  std::string property;
  bool pass = true;
  std::string detail;
};

struct VerifyOptions {
  std::vector<IpClass> lemma3_classes{{1}, {2}, IpClass::infinite()};
  std::uint64_t search_budget = kDefaultSearchBudget;
  /// Stochastic grid points evaluated per (driver set, class); larger grids
  /// are sampled.
  std::uint64_t grid_budget = 4096;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
};

/// A parametrized control instance.
struct Instance {
  const Cbn& cbn;
  NodeSet intervenable;
  Assignment desired;
};

/// For every subset X of the intervenable set and every requested class:
/// min over policies <= P(desired) <= max over policies. Refuses class-0.
std::vector<Check> verify_lemma3(const Instance& in, const VerifyOptions& options = {});

/// The class-infinity optimum on C*'s drivers equals the best over every
/// subset of the intervenable set, for both directions.
std::vector<Check> verify_sufficiency(const Instance& in, const VerifyOptions& options = {});

/// Builds the adversarial parametrization for C*'s drivers and checks that
/// forcing every driver to 1 gives the desired event probability 1 while no
/// class-infinity policy on a proper subset gives more than 0.
std::vector<Check> verify_usm(const Dag& dag, const NodeSet& intervenable, const NodeSet& targets,
                              const VerifyOptions& options = {});

/// Stochastic policy tables on a 0.25 grid never beat the deterministic
/// optimum (checked on C*'s drivers and on the whole intervenable set, for
/// classes 0, 1 and infinity).
std::vector<Check> verify_extremality(const Instance& in, const VerifyOptions& options = {});

/// min over X of the class-infinity max, and max over X of the
/// class-infinity min, both equal P(desired) and are attained by X = {}.
std::vector<Check> verify_minimax(const Instance& in, const VerifyOptions& options = {});

/// With an intervenable target, min-min reaches exactly 0 with one driver.
/// Vacuously passes when no target is intervenable.
std::vector<Check> verify_min_min(const Instance& in, const VerifyOptions& options = {});

/// Evaluates P(desired | do[policies]) where each policy is a full
/// stochastic table; independent of apply_intervention.
double stochastic_value(const Cbn& cbn, const std::map<NodeIndex, Cpd>& policies,
                        const Assignment& desired);

bool all_pass(const std::vector<Check>& checks);

}  // namespace tpsctl
