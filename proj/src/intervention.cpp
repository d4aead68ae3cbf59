#include "tpsctl/intervention.hpp"

#include <algorithm>
#include <iterator>

#include "tpsctl/error.hpp"

namespace tpsctl {

std::string IpClass::to_string() const {
  return is_infinite() ? std::string("inf") : std::to_string(level);
}

IpClass IpClass::parse(const std::string& text) {
  if (text == "inf" || text == "infinity") return infinite();
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ValidationError("invalid policy class '" + text + "'");
  return {std::stoul(text)};
}

void InterventionPair::add(InterventionPolicy policy) {
  const NodeIndex t = policy.target();
  if (!policies_.emplace(t, std::move(policy)).second)
    throw ValidationError("node already carries an intervention policy");
}

const InterventionPolicy* InterventionPair::find(NodeIndex target) const {
  auto it = policies_.find(target);
  return it == policies_.end() ? nullptr : &it->second;
}

NodeSet InterventionPair::targets() const {
  NodeSet out;
  out.reserve(policies_.size());
  for (const auto& [t, _] : policies_) out.push_back(t);
  return out;
}

std::vector<Edge> IDag::all_edges() const {
  std::vector<Edge> out;
  std::set_union(solid.begin(), solid.end(), dashed.begin(), dashed.end(), std::back_inserter(out));
  return out;
}

NodeSet scope_for_class(const Dag& dag, NodeIndex v, IpClass cls) {
  dag.check_node(v);
  if (cls.level == 0) return {};
  return ancestors(dag, v, cls.level);
}

InterventionPolicy atomic_policy(NodeIndex v, std::size_t value, std::size_t card) {
  if (value >= card)
    throw ValidationError("atomic value " + std::to_string(value) + " out of range for cardinality " +
                          std::to_string(card));
  std::vector<double> row(card, 0.0);
  row[value] = 1.0;
  return InterventionPolicy(Cpd(v, card, {}, {}, std::move(row)));
}

InterventionPolicy deterministic_policy(
    const Dag& dag, const std::vector<std::size_t>& cards, NodeIndex v, NodeSet scope,
    const std::function<std::size_t(std::span<const std::size_t>)>& choose) {
  dag.check_node(v);
  std::vector<std::size_t> scope_cards;
  for (NodeIndex s : scope) scope_cards.push_back(cards.at(s));
  return InterventionPolicy(Cpd::deterministic(v, cards.at(v), std::move(scope), std::move(scope_cards), choose));
}

void validate_policy(const Dag& dag, const std::vector<std::size_t>& cards,
                     const InterventionPolicy& policy) {
  const NodeIndex t = policy.target();
  dag.check_node(t);
  const std::string& nm = dag.name(t);
  if (policy.table().card() != cards.at(t))
    throw ValidationError("policy table of '" + nm + "' disagrees with the node's cardinality");
  const NodeSet anc = ancestors(dag, t);
  for (std::size_t i = 0; i < policy.scope().size(); ++i) {
    const NodeIndex s = policy.scope()[i];
    dag.check_node(s);
    if (s == t) throw ValidationError("policy of '" + nm + "' has its own target in scope");
    if (!contains(anc, s))
      throw ValidationError("policy scope member '" + dag.name(s) + "' is not an ancestor of '" + nm + "'");
    if (policy.table().parent_cards()[i] != cards.at(s))
      throw ValidationError("policy table of '" + nm + "' disagrees with the cardinality of '" +
                            dag.name(s) + "'");
  }
}

void validate_pair(const Dag& dag, const std::vector<std::size_t>& cards,
                   const InterventionPair& pair) {
  for (const auto& [_, p] : pair.policies()) validate_policy(dag, cards, p);
}

IpClass classify_policy(const Dag& dag, const InterventionPolicy& policy) {
  const NodeIndex t = policy.target();
  const NodeSet scope = canonical(policy.scope());
  if (scope.empty()) return {0};
  if (!is_subset(scope, ancestors(dag, t)))
    throw ValidationError("policy scope is not within the ancestry of '" + dag.name(t) + "'");
  for (std::size_t level = 1; level < dag.size(); ++level)
    if (is_subset(scope, ancestors(dag, t, level))) return {level};
  return IpClass::infinite();
}

IDag build_idag(const Dag& dag, const InterventionPair& pair) {
  for (const auto& [t, p] : pair.policies()) {
    dag.check_node(t);
    const NodeSet anc = ancestors(dag, t);
    for (NodeIndex s : p.scope())
      if (!contains(anc, s))
        throw ValidationError("policy scope member is not an ancestor of '" + dag.name(t) + "'");
  }
  IDag id{dag, pair.targets(), {}, {}};
  for (const Edge& e : dag.edges())
    if (!contains(id.intervened, e.child)) id.solid.push_back(e);
  for (const auto& [t, p] : pair.policies()) {
    for (NodeIndex s : p.scope()) id.dashed.push_back({s, t});
    id.dashed.push_back({kClamp, t});
  }
  std::sort(id.dashed.begin(), id.dashed.end());
  return id;
}

bool subsumes(const Dag& g1, const Dag& g2) {
  if (g1.names() != g2.names()) return false;
  const auto e1 = g1.edges();
  const auto e2 = g2.edges();
  return std::includes(e1.begin(), e1.end(), e2.begin(), e2.end());
}

std::vector<Edge> surplus(const Dag& g1, const Dag& g2) {
  const auto e1 = g1.edges();
  const auto e2 = g2.edges();
  std::vector<Edge> out;
  std::set_difference(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(out));
  return out;
}

bool i_subsumes(const IDag& id1, const IDag& id2) {
  if (!(id1.base == id2.base)) throw ValidationError("i-DAGs are built over different base graphs");
  const auto e1 = id1.all_edges();
  const auto e2 = id2.all_edges();
  // (i): same node set (base nodes plus the clamp) and E2 ⊆ E1.
  if (!std::includes(e1.begin(), e1.end(), e2.begin(), e2.end())) return false;
  // (ii)
  if (!std::includes(id1.dashed.begin(), id1.dashed.end(), id2.dashed.begin(), id2.dashed.end()))
    return false;
  // (iii)
  std::vector<Edge> extra;
  std::set_difference(e1.begin(), e1.end(), e2.begin(), e2.end(), std::back_inserter(extra));
  return std::all_of(extra.begin(), extra.end(), [&](const Edge& e) {
    return std::binary_search(id1.dashed.begin(), id1.dashed.end(), e);
  });
}

Cpd widen_scope(const Cpd& table, const NodeSet& scope, const std::vector<std::size_t>& cards) {
  std::vector<std::size_t> position(table.parents().size());
  for (std::size_t i = 0; i < table.parents().size(); ++i) {
    auto it = std::find(scope.begin(), scope.end(), table.parents()[i]);
    if (it == scope.end()) throw ValidationError("widened scope must contain the original scope");
    position[i] = static_cast<std::size_t>(it - scope.begin());
  }
  std::vector<std::size_t> scope_cards;
  for (NodeIndex s : scope) scope_cards.push_back(cards.at(s));
  std::uint64_t rows = 1;
  for (std::size_t c : scope_cards) rows *= c;
  std::vector<double> out;
  out.reserve(rows * table.card());
  std::vector<std::size_t> config(scope.size(), 0);
  std::vector<std::size_t> inner(cards.size(), 0);
  for (std::uint64_t r = 0; r < rows; ++r) {
    for (std::size_t i = 0; i < table.parents().size(); ++i) inner[table.parents()[i]] = config[position[i]];
    const auto row = table.row(table.row_index(inner));
    out.insert(out.end(), row.begin(), row.end());
    for (std::size_t i = config.size(); i-- > 0;) {
      if (++config[i] < scope_cards[i]) break;
      config[i] = 0;
    }
  }
  return Cpd(table.owner(), table.card(), scope, std::move(scope_cards), std::move(out));
}

Cbn apply_intervention(const Cbn& cbn, const InterventionPair& pair) {
  const Dag& dag = cbn.dag();
  validate_pair(dag, cbn.cards(), pair);
  if (pair.empty()) return cbn;
  std::vector<Edge> edges;
  std::vector<Cpd> cpds;
  cpds.reserve(dag.size());
  for (NodeIndex v = 0; v < dag.size(); ++v) {
    if (const InterventionPolicy* p = pair.find(v)) {
      for (NodeIndex s : p->scope()) edges.push_back({s, v});
      cpds.push_back(p->table());
    } else {
      for (NodeIndex s : dag.parents(v)) edges.push_back({s, v});
      cpds.push_back(cbn.cpd(v));
    }
  }
  return Cbn(Dag(dag.names(), edges), cbn.cards(), std::move(cpds));
}

double interventional_prob(const Cbn& cbn, const InterventionPair& pair, const Assignment& event) {
  return marginal_prob(apply_intervention(cbn, pair), event);
}

}  // namespace tpsctl
