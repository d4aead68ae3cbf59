#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "tpsctl/graph.hpp"

namespace tpsctl {

/// Tolerance applied to every CPD row sum.
inline constexpr double kRowSumTolerance = 1e-9;

/// Largest joint state space the enumeration routines agree to walk.
inline constexpr std::uint64_t kMaxEnumeratedStates = std::uint64_t{1} << 24;

/// Partial or full assignment of value indices to nodes.
using Assignment = std::map<NodeIndex, std::size_t>;

/// Conditional probability table of `owner` given an ordered parent list.
///
/// Rows are indexed by parent configuration in row-major order (the first
/// parent is the most significant digit); each row is a distribution over
/// the owner's values.
class Cpd {
 public:
  Cpd(NodeIndex owner, std::size_t card, std::vector<NodeIndex> parents,
      std::vector<std::size_t> parent_cards, std::vector<double> table);

  /// Table whose row for each parent configuration puts all mass on
  /// `choose(parent_values)`.
  static Cpd deterministic(
      NodeIndex owner, std::size_t card, std::vector<NodeIndex> parents,
      std::vector<std::size_t> parent_cards,
      const std::function<std::size_t(std::span<const std::size_t>)>& choose);

  NodeIndex owner() const noexcept { return owner_; }
  std::size_t card() const noexcept { return card_; }
  const std::vector<NodeIndex>& parents() const noexcept { return parents_; }
  const std::vector<std::size_t>& parent_cards() const noexcept { return parent_cards_; }
  const std::vector<double>& table() const noexcept { return table_; }
  std::size_t row_count() const noexcept { return table_.size() / card_; }

  std::span<const double> row(std::size_t r) const;

  /// Row selected by a full state vector indexed by NodeIndex.
  std::size_t row_index(std::span<const std::size_t> states) const;

  double prob(std::size_t value, std::span<const std::size_t> states) const {
    return table_[row_index(states) * card_ + value];
  }

  /// Parent values of row `r`, in parent-list order.
  std::vector<std::size_t> row_configuration(std::size_t r) const;

  bool operator==(const Cpd&) const = default;

 private:
  NodeIndex owner_;
  std::size_t card_;
  std::vector<NodeIndex> parents_;
  std::vector<std::size_t> parent_cards_;
  std::vector<std::size_t> strides_;
  std::vector<double> table_;
};

/// A Dag together with node cardinalities and one CPD per node.
class Cbn {
 public:
  /// `cpds` may come in any order; each node needs exactly one whose parent
  /// list is a permutation of the node's Dag parents.
  Cbn(Dag dag, std::vector<std::size_t> cards, std::vector<Cpd> cpds);

  const Dag& dag() const noexcept { return dag_; }
  const std::vector<std::size_t>& cards() const noexcept { return cards_; }
  std::size_t card(NodeIndex v) const { return cards_.at(v); }
  const Cpd& cpd(NodeIndex v) const { return cpds_.at(v); }
  const std::vector<Cpd>& cpds() const noexcept { return cpds_; }

  /// Product of all cardinalities, saturating at UINT64_MAX.
  std::uint64_t state_count() const noexcept;

  bool operator==(const Cbn&) const = default;

 private:
  Dag dag_;
  std::vector<std::size_t> cards_;
  std::vector<Cpd> cpds_;
};

/// Checks cardinalities (each >= 2) against the Dag size.
void validate_cards(const Dag& dag, const std::vector<std::size_t>& cards);

/// Checks that every assigned node exists and every value is in range.
void validate_assignment(const Dag& dag, const std::vector<std::size_t>& cards,
                         const Assignment& a);

/// Calls `fn(states)` for every completion of `fixed` over the nodes it
/// leaves free; `states` is indexed by NodeIndex.
void for_each_completion(const std::vector<std::size_t>& cards, const Assignment& fixed,
                         const std::function<void(std::span<const std::size_t>)>& fn);

double joint_prob(const Cbn& cbn, std::span<const std::size_t> states);
double joint_prob(const Cbn& cbn, const Assignment& full);

/// Sum of joint_prob over every completion of a non-empty event.
double marginal_prob(const Cbn& cbn, const Assignment& event);

/// P(event | given); throws ZeroProbabilityError when P(given) == 0.
double conditional_prob(const Cbn& cbn, const Assignment& event, const Assignment& given);

}  // namespace tpsctl
