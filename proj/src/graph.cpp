#include "tpsctl/graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>

#include "tpsctl/error.hpp"

namespace tpsctl {

Dag::Dag(std::vector<std::string> names, const std::vector<Edge>& edges)
    : names_(std::move(names)) {
  const std::size_t n = names_.size();
  lookup_.reserve(n);
  for (NodeIndex i = 0; i < n; ++i) {
    if (names_[i].empty()) throw ValidationError("node names must be non-empty");
    if (!lookup_.emplace(names_[i], i).second)
      throw ValidationError("duplicate node name '" + names_[i] + "'");
  }
  parents_.assign(n, {});
  children_.assign(n, {});
  for (const Edge& e : edges) {
    if (e.parent >= n || e.child >= n)
      throw ValidationError("edge endpoint out of range");
    if (e.parent == e.child)
      throw ValidationError("self-loop on '" + names_[e.parent] + "'");
    parents_[e.child].push_back(e.parent);
    children_[e.parent].push_back(e.child);
  }
  for (NodeIndex v = 0; v < n; ++v) {
    auto& ps = parents_[v];
    std::sort(ps.begin(), ps.end());
    if (std::adjacent_find(ps.begin(), ps.end()) != ps.end())
      throw ValidationError("duplicate edge into '" + names_[v] + "'");
    std::sort(children_[v].begin(), children_[v].end());
  }
  edge_count_ = edges.size();

  // Acyclicity: Kahn must consume every node.
  std::vector<std::size_t> indegree(n);
  for (NodeIndex v = 0; v < n; ++v) indegree[v] = parents_[v].size();
  std::vector<NodeIndex> ready;
  for (NodeIndex v = 0; v < n; ++v)
    if (indegree[v] == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    NodeIndex v = ready.back();
    ready.pop_back();
    ++seen;
    for (NodeIndex c : children_[v])
      if (--indegree[c] == 0) ready.push_back(c);
  }
  if (seen != n) throw ValidationError("edge set contains a directed cycle");
}

Dag Dag::from_names(std::vector<std::string> names,
                    const std::vector<std::pair<std::string, std::string>>& edges) {
  std::unordered_map<std::string, NodeIndex> idx;
  for (NodeIndex i = 0; i < names.size(); ++i) idx.emplace(names[i], i);
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (const auto& [p, c] : edges) {
    auto ip = idx.find(p);
    auto ic = idx.find(c);
    if (ip == idx.end()) throw ValidationError("edge references unknown node '" + p + "'");
    if (ic == idx.end()) throw ValidationError("edge references unknown node '" + c + "'");
    es.push_back({ip->second, ic->second});
  }
  return Dag(std::move(names), es);
}

const std::string& Dag::name(NodeIndex v) const {
  check_node(v);
  return names_[v];
}

NodeIndex Dag::index(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw ValidationError("unknown node '" + std::string(name) + "'");
}

std::optional<NodeIndex> Dag::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

const NodeSet& Dag::parents(NodeIndex v) const {
  check_node(v);
  return parents_[v];
}

const NodeSet& Dag::children(NodeIndex v) const {
  check_node(v);
  return children_[v];
}

bool Dag::has_edge(NodeIndex parent, NodeIndex child) const {
  return child < size() && contains(parents_[child], parent);
}

std::vector<Edge> Dag::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (NodeIndex p = 0; p < size(); ++p)
    for (NodeIndex c : children_[p]) out.push_back({p, c});
  return out;
}

void Dag::check_node(NodeIndex v) const {
  if (v >= names_.size())
    throw ValidationError("node index " + std::to_string(v) + " out of range");
}

std::vector<NodeIndex> topological_order(const Dag& dag) {
  const std::size_t n = dag.size();
  std::vector<std::size_t> indegree(n);
  std::priority_queue<NodeIndex, std::vector<NodeIndex>, std::greater<>> ready;
  for (NodeIndex v = 0; v < n; ++v) {
    indegree[v] = dag.parents(v).size();
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<NodeIndex> order;
  order.reserve(n);
  while (!ready.empty()) {
    NodeIndex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (NodeIndex c : dag.children(v))
      if (--indegree[c] == 0) ready.push(c);
  }
  return order;
}

NodeSet ancestors(const Dag& dag, NodeIndex v, std::size_t levels) {
  dag.check_node(v);
  if (levels == 0) throw ValidationError("ancestry level must be at least 1");
  std::vector<bool> seen(dag.size(), false);
  std::vector<NodeIndex> frontier{v};
  seen[v] = true;
  NodeSet out;
  for (std::size_t depth = 0; depth < levels && !frontier.empty(); ++depth) {
    std::vector<NodeIndex> next;
    for (NodeIndex u : frontier) {
      for (NodeIndex p : dag.parents(u)) {
        if (seen[p]) continue;
        seen[p] = true;
        out.push_back(p);
        next.push_back(p);
      }
    }
    frontier = std::move(next);
  }
  return canonical(std::move(out));
}

NodeSet ancestors_of_set(const Dag& dag, const NodeSet& vs) {
  NodeSet out;
  for (NodeIndex v : vs) out = set_union(out, ancestors(dag, v));
  return out;
}

NodeSet descendants(const Dag& dag, NodeIndex v) {
  dag.check_node(v);
  std::vector<bool> seen(dag.size(), false);
  std::vector<NodeIndex> stack{v};
  NodeSet out;
  while (!stack.empty()) {
    NodeIndex u = stack.back();
    stack.pop_back();
    for (NodeIndex c : dag.children(u)) {
      if (seen[c]) continue;
      seen[c] = true;
      out.push_back(c);
      stack.push_back(c);
    }
  }
  return canonical(std::move(out));
}

BackwardChain backward_chain(const Dag& dag, const NodeSet& start, const NodeSet& stop) {
  std::vector<bool> is_stop(dag.size(), false);
  for (NodeIndex s : stop) {
    dag.check_node(s);
    is_stop[s] = true;
  }
  std::vector<bool> seen(dag.size(), false);
  std::deque<NodeIndex> queue;
  for (NodeIndex s : start) {
    dag.check_node(s);
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  BackwardChain bc;
  while (!queue.empty()) {
    NodeIndex u = queue.front();
    queue.pop_front();
    bc.visited.push_back(u);
    if (is_stop[u]) {
      bc.terminals.push_back(u);
      continue;
    }
    for (NodeIndex p : dag.parents(u)) {
      if (seen[p]) continue;
      seen[p] = true;
      queue.push_back(p);
    }
  }
  bc.visited = canonical(std::move(bc.visited));
  bc.terminals = canonical(std::move(bc.terminals));
  return bc;
}

bool d_separated(const Dag& dag, const NodeSet& a, const NodeSet& b, const NodeSet& z) {
  for (const NodeSet* s : {&a, &b, &z})
    for (NodeIndex v : *s) dag.check_node(v);
  if (a.empty() || b.empty())
    throw ValidationError("d-separation needs non-empty endpoint sets");
  const NodeSet ca = canonical(a), cb = canonical(b), cz = canonical(z);
  if (!set_intersection(ca, cb).empty() || !set_intersection(ca, cz).empty() ||
      !set_intersection(cb, cz).empty())
    throw ValidationError("d-separation sets must be pairwise disjoint");

  const std::size_t n = dag.size();
  std::vector<bool> in_z(n, false), z_or_ancestor(n, false), in_b(n, false);
  for (NodeIndex v : cz) in_z[v] = z_or_ancestor[v] = true;
  for (NodeIndex v : ancestors_of_set(dag, cz)) z_or_ancestor[v] = true;
  for (NodeIndex v : cb) in_b[v] = true;

  // Reachability over (node, direction) states. "up" means the trail
  // entered the node from one of its children; "down" from a parent.
  enum Dir : int { kUp = 0, kDown = 1 };
  std::vector<bool> visited(2 * n, false);
  std::vector<std::pair<NodeIndex, Dir>> stack;
  for (NodeIndex v : ca) stack.push_back({v, kUp});
  while (!stack.empty()) {
    auto [v, dir] = stack.back();
    stack.pop_back();
    if (visited[2 * v + dir]) continue;
    visited[2 * v + dir] = true;
    if (!in_z[v] && in_b[v]) return false;
    if (dir == kUp) {
      if (in_z[v]) continue;
      for (NodeIndex p : dag.parents(v)) stack.push_back({p, kUp});
      for (NodeIndex c : dag.children(v)) stack.push_back({c, kDown});
    } else {
      if (!in_z[v])
        for (NodeIndex c : dag.children(v)) stack.push_back({c, kDown});
      if (z_or_ancestor[v])
        for (NodeIndex p : dag.parents(v)) stack.push_back({p, kUp});
    }
  }
  return true;
}

NodeSet canonical(NodeSet vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool contains(const NodeSet& set, NodeIndex v) {
  return std::binary_search(set.begin(), set.end(), v);
}

bool is_subset(const NodeSet& sub, const NodeSet& super) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace tpsctl
