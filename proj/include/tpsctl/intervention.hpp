#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tpsctl/cbn.hpp"
#include "tpsctl/graph.hpp"

namespace tpsctl {

/// Intervention-policy class: the ancestry depth a policy may condition on.
/// Level 0 means an empty scope; kAllLevels stands for class-infinity.
struct IpClass {
  std::size_t level = 0;

  static constexpr IpClass infinite() noexcept { return {kAllLevels}; }
  constexpr bool is_infinite() const noexcept { return level == kAllLevels; }

  /// "0", "1", ..., "inf".
  std::string to_string() const;
  /// Accepts the same spellings as to_string() plus "infinity".
  static IpClass parse(const std::string& text);

  auto operator<=>(const IpClass&) const = default;
};

/// A scoped stochastic policy: the CPD that replaces the target's mechanism.
/// The scope is the policy table's parent list.
class InterventionPolicy {
 public:
  explicit InterventionPolicy(Cpd table) : table_(std::move(table)) {}

  NodeIndex target() const noexcept { return table_.owner(); }
  const std::vector<NodeIndex>& scope() const noexcept { return table_.parents(); }
  const Cpd& table() const noexcept { return table_; }

  bool operator==(const InterventionPolicy&) const = default;

 private:
  Cpd table_;
};

/// Intervened set together with one policy per intervened node.
class InterventionPair {
 public:
  InterventionPair() = default;

  /// Throws ValidationError if the target already carries a policy.
  void add(InterventionPolicy policy);

  const std::map<NodeIndex, InterventionPolicy>& policies() const noexcept { return policies_; }
  const InterventionPolicy* find(NodeIndex target) const;
  NodeSet targets() const;
  bool empty() const noexcept { return policies_.empty(); }
  std::size_t size() const noexcept { return policies_.size(); }

  bool operator==(const InterventionPair&) const = default;

 private:
  std::map<NodeIndex, InterventionPolicy> policies_;
};

/// Endpoint standing for the clamp node in IDag edges.
inline constexpr NodeIndex kClamp = static_cast<NodeIndex>(-1);

/// Graph induced by an intervention pair: base edges minus those entering
/// intervened nodes (solid), plus policy dependencies (dashed). Every
/// intervened node also receives a dashed edge from the clamp node.
struct IDag {
  Dag base;
  NodeSet intervened;
  std::vector<Edge> solid;   // sorted
  std::vector<Edge> dashed;  // sorted; parent may be kClamp

  /// solid ∪ dashed as plain (untyped) edges, sorted.
  std::vector<Edge> all_edges() const;
};

/// Scope prescribed by `cls` for node v: empty for class-0, ancestors up to
/// the class level otherwise, always computed on the original graph.
NodeSet scope_for_class(const Dag& dag, NodeIndex v, IpClass cls);

/// Kronecker-delta policy forcing v to `value`.
InterventionPolicy atomic_policy(NodeIndex v, std::size_t value, std::size_t card);

/// Deterministic policy with the given scope: `choose` maps scope values (in
/// scope order) to the forced value.
InterventionPolicy deterministic_policy(
    const Dag& dag, const std::vector<std::size_t>& cards, NodeIndex v, NodeSet scope,
    const std::function<std::size_t(std::span<const std::size_t>)>& choose);

/// Checks the policy invariants against the original graph: target not in
/// scope, scope within the target's ancestry, cardinalities consistent.
void validate_policy(const Dag& dag, const std::vector<std::size_t>& cards,
                     const InterventionPolicy& policy);
void validate_pair(const Dag& dag, const std::vector<std::size_t>& cards,
                   const InterventionPair& pair);

/// Smallest class whose prescribed scope contains the policy's scope.
IpClass classify_policy(const Dag& dag, const InterventionPolicy& policy);

IDag build_idag(const Dag& dag, const InterventionPair& pair);

/// True iff both graphs have the same node names and g2's edges are a
/// subset of g1's.
bool subsumes(const Dag& g1, const Dag& g2);
/// E1 \ E2.
std::vector<Edge> surplus(const Dag& g1, const Dag& g2);

/// i-subsumability: plain subsumption of the induced graphs, dashed-edge
/// containment, and a surplus made only of dashed edges. Both i-DAGs must
/// share the same base graph.
bool i_subsumes(const IDag& id1, const IDag& id2);

/// Re-expresses a table over a larger scope; the added scope members are
/// ignored by every row. `scope` must contain the table's parents.
Cpd widen_scope(const Cpd& table, const NodeSet& scope, const std::vector<std::size_t>& cards);

/// Replaces each intervened node's CPD by its policy table (parents = scope).
Cbn apply_intervention(const Cbn& cbn, const InterventionPair& pair);

/// P(event | do[pair]) by exact enumeration of the intervened network.
double interventional_prob(const Cbn& cbn, const InterventionPair& pair, const Assignment& event);

}  // namespace tpsctl
