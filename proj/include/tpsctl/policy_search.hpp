#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "tpsctl/cbn.hpp"
#include "tpsctl/intervention.hpp"

namespace tpsctl {

enum class Direction { Min, Max };

/// Default cap on branch-and-bound relaxations per optimization.
inline constexpr std::uint64_t kDefaultSearchBudget = 2'000'000;

/// Largest relevant state space the optimizer will lay out.
inline constexpr std::uint64_t kMaxSearchStates = std::uint64_t{1} << 20;

/// Exact optimizer of P(desired | do[drivers; policies]) over deterministic
/// policies with fixed scopes.
///
/// The objective is affine in every policy row, so the optimum over
/// stochastic policies is attained by a deterministic one. The search is a
/// branch and bound over information sets (driver, scope configuration).
/// Each bound lets a driver pick its value per full history along a
/// topological order; that relaxation is exact whenever all reachable
/// histories sharing an information set agree on the choice, otherwise the
/// first disagreeing information set is branched on.
class PolicySearch {
 public:
  /// `scopes` maps each driver to its scope, which must lie in the driver's
  /// ancestry. `desired` is the target event.
  PolicySearch(const Cbn& cbn, std::map<NodeIndex, NodeSet> scopes, Assignment desired);

  double optimal_value(Direction dir, std::uint64_t budget = kDefaultSearchBudget);

  struct Optimum {
    double value;
    /// Per driver, the forced value for each scope configuration (row-major
    /// over the scope, first member most significant).
    std::map<NodeIndex, std::vector<std::size_t>> choices;
  };

  /// Optimal value and the lexicographically smallest optimal policy
  /// encoding (drivers by index, rows by scope configuration).
  Optimum optimal_policy(Direction dir, std::uint64_t budget = kDefaultSearchBudget);

  /// Relaxations evaluated so far.
  std::uint64_t relaxations() const noexcept { return relaxations_; }

 private:
  struct Step {
    NodeIndex node;
    std::size_t card;
    bool decision = false;
    bool is_target = false;
    std::size_t desired = 0;
    // Decision steps only.
    std::vector<NodeIndex> scope;
    std::vector<std::size_t> strides;
    std::size_t infoset_base = 0;
  };

  double relax(std::size_t k, std::size_t prefix);
  void trace(std::size_t k, std::size_t prefix);
  /// Returns true when a feasible policy beating `incumbent_` was found
  /// and `stop_early_` is set.
  bool branch();
  double run(Direction dir, std::uint64_t budget, double incumbent, bool stop_early);
  std::size_t infoset_of(const Step& s) const;

  const Cbn* cbn_;
  std::map<NodeIndex, NodeSet> scopes_;
  Assignment desired_;
  std::vector<Step> steps_;
  std::vector<std::size_t> level_offset_;
  std::vector<std::size_t> choice_;
  std::vector<std::size_t> states_;
  std::size_t infoset_count_ = 0;
  std::vector<std::size_t> infoset_card_;
  std::map<NodeIndex, std::size_t> infoset_base_;  // every driver, relevant or not

  // Per-run state.
  Direction dir_ = Direction::Max;
  std::uint64_t budget_ = 0;
  std::uint64_t relaxations_ = 0;
  double incumbent_ = 0.0;
  bool stop_early_ = false;
  bool found_ = false;
  std::vector<int> fixed_;
  std::vector<int> seen_;
  std::size_t conflict_ = 0;
};

}  // namespace tpsctl
