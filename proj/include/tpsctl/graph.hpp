#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace tpsctl {

/// Position of a node in its Dag's insertion order.
using NodeIndex = std::size_t;

/// Node set in canonical form: ascending insertion index, no duplicates.
using NodeSet = std::vector<NodeIndex>;

/// Ancestry depth meaning "all ancestors".
inline constexpr std::size_t kAllLevels = std::numeric_limits<std::size_t>::max();

struct Edge {
  NodeIndex parent;
  NodeIndex child;

  auto operator<=>(const Edge&) const = default;
};

/// Immutable directed acyclic graph over uniquely named nodes.
///
/// Construction validates the invariants (non-empty unique names, known
/// endpoints, no self-loops, no duplicate edges, no directed cycle), so any
/// Dag value in hand is well-formed.
class Dag {
 public:
  Dag() = default;
  Dag(std::vector<std::string> names, const std::vector<Edge>& edges);

  static Dag from_names(std::vector<std::string> names,
                        const std::vector<std::pair<std::string, std::string>>& edges);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(NodeIndex v) const;

  /// Index of `name`; throws ValidationError for an unknown node.
  NodeIndex index(std::string_view name) const;
  std::optional<NodeIndex> find(std::string_view name) const;

  const NodeSet& parents(NodeIndex v) const;
  const NodeSet& children(NodeIndex v) const;
  bool has_edge(NodeIndex parent, NodeIndex child) const;

  /// All edges ordered by (parent, child).
  std::vector<Edge> edges() const;
  std::size_t edge_count() const noexcept { return edge_count_; }

  void check_node(NodeIndex v) const;

  bool operator==(const Dag& other) const {
    return names_ == other.names_ && parents_ == other.parents_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, NodeIndex> lookup_;
  std::vector<NodeSet> parents_;
  std::vector<NodeSet> children_;
  std::size_t edge_count_ = 0;
};

/// Kahn's algorithm; among ready nodes the smallest insertion index goes first.
std::vector<NodeIndex> topological_order(const Dag& dag);

/// Ancestors reachable by at most `levels` reverse steps (v excluded).
/// levels == 1 gives the parents; kAllLevels gives the full ancestry.
NodeSet ancestors(const Dag& dag, NodeIndex v, std::size_t levels = kAllLevels);

/// Union of full ancestries of every member of `vs` (members excluded unless
/// they are ancestors of one another).
NodeSet ancestors_of_set(const Dag& dag, const NodeSet& vs);

NodeSet descendants(const Dag& dag, NodeIndex v);

struct BackwardChain {
  /// Every node on a reverse path from the start set that does not pass
  /// through a stop node (stop nodes themselves included).
  NodeSet visited;
  /// visited ∩ stop: the nodes at which a chaining path was cut.
  NodeSet terminals;
};

/// Reverse traversal from `start` through parents. A stop node is recorded
/// as a terminal and its parents are not explored; this includes start nodes
/// that are themselves stop nodes. Parentless nodes end their path without
/// becoming terminals.
BackwardChain backward_chain(const Dag& dag, const NodeSet& start, const NodeSet& stop);

/// True iff every trail between A and B is blocked by Z. The three sets must
/// be pairwise disjoint and A, B non-empty.
bool d_separated(const Dag& dag, const NodeSet& a, const NodeSet& b, const NodeSet& z);

/// Sorts and deduplicates.
NodeSet canonical(NodeSet vs);
bool contains(const NodeSet& set, NodeIndex v);
bool is_subset(const NodeSet& sub, const NodeSet& super);
NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const NodeSet& a, const NodeSet& b);

}  // namespace tpsctl
