#include "tpsctl/cbn.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "tpsctl/error.hpp"

namespace tpsctl {

namespace {

std::uint64_t saturating_product(const std::vector<std::size_t>& xs) {
  std::uint64_t total = 1;
  for (std::size_t x : xs) {
    if (x != 0 && total > UINT64_MAX / x) return UINT64_MAX;
    total *= x;
  }
  return total;
}

}  // namespace

Cpd::Cpd(NodeIndex owner, std::size_t card, std::vector<NodeIndex> parents,
         std::vector<std::size_t> parent_cards, std::vector<double> table)
    : owner_(owner),
      card_(card),
      parents_(std::move(parents)),
      parent_cards_(std::move(parent_cards)),
      table_(std::move(table)) {
  if (card_ < 2) throw ValidationError("cardinality must be at least 2");
  if (parents_.size() != parent_cards_.size())
    throw ValidationError("parent list and parent cardinalities differ in length");
  for (std::size_t i = 0; i < parents_.size(); ++i) {
    if (parents_[i] == owner_) throw ValidationError("a CPD cannot condition on its owner");
    if (parent_cards_[i] < 2) throw ValidationError("parent cardinality must be at least 2");
    for (std::size_t j = 0; j < i; ++j)
      if (parents_[j] == parents_[i]) throw ValidationError("duplicate parent in CPD");
  }
  const std::uint64_t rows = saturating_product(parent_cards_);
  if (rows > kMaxEnumeratedStates) throw ValidationError("CPD has too many parent configurations");
  if (table_.size() != rows * card_)
    throw ValidationError("CPD table has " + std::to_string(table_.size()) + " entries, expected " +
                          std::to_string(rows * card_));
  strides_.assign(parents_.size(), 1);
  for (std::size_t i = parents_.size(); i-- > 1;)
    strides_[i - 1] = strides_[i] * parent_cards_[i];
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t k = 0; k < card_; ++k) {
      const double p = table_[r * card_ + k];
      if (!(p >= 0.0 && p <= 1.0))
        throw ValidationError("CPD entry outside [0, 1] in row " + std::to_string(r));
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance)
      throw ValidationError("CPD row " + std::to_string(r) + " sums to " + std::to_string(sum));
  }
}

Cpd Cpd::deterministic(NodeIndex owner, std::size_t card, std::vector<NodeIndex> parents,
                       std::vector<std::size_t> parent_cards,
                       const std::function<std::size_t(std::span<const std::size_t>)>& choose) {
  const std::uint64_t rows = saturating_product(parent_cards);
  if (rows > kMaxEnumeratedStates) throw ValidationError("CPD has too many parent configurations");
  std::vector<double> table(rows * card, 0.0);
  std::vector<std::size_t> config(parent_cards.size(), 0);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t v = choose(config);
    if (v >= card) throw ValidationError("deterministic CPD value out of range");
    table[r * card + v] = 1.0;
    for (std::size_t i = config.size(); i-- > 0;) {
      if (++config[i] < parent_cards[i]) break;
      config[i] = 0;
    }
  }
  return Cpd(owner, card, std::move(parents), std::move(parent_cards), std::move(table));
}

std::span<const double> Cpd::row(std::size_t r) const {
  if (r >= row_count()) throw ValidationError("CPD row out of range");
  return std::span<const double>(table_).subspan(r * card_, card_);
}

std::size_t Cpd::row_index(std::span<const std::size_t> states) const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < parents_.size(); ++i) r += states[parents_[i]] * strides_[i];
  return r;
}

std::vector<std::size_t> Cpd::row_configuration(std::size_t r) const {
  std::vector<std::size_t> config(parents_.size());
  for (std::size_t i = 0; i < parents_.size(); ++i) {
    config[i] = r / strides_[i];
    r %= strides_[i];
  }
  return config;
}

Cbn::Cbn(Dag dag, std::vector<std::size_t> cards, std::vector<Cpd> cpds)
    : dag_(std::move(dag)), cards_(std::move(cards)) {
  validate_cards(dag_, cards_);
  std::vector<std::optional<Cpd>> slots(dag_.size());
  for (Cpd& c : cpds) {
    const NodeIndex v = c.owner();
    if (v >= dag_.size()) throw ValidationError("CPD owner out of range");
    const std::string& nm = dag_.name(v);
    if (slots[v]) throw ValidationError("duplicate CPD for '" + nm + "'");
    if (c.card() != cards_[v]) throw ValidationError("CPD of '" + nm + "' disagrees with its cardinality");
    if (canonical(c.parents()) != dag_.parents(v))
      throw ValidationError("CPD parents of '" + nm + "' differ from the graph's parents");
    for (std::size_t i = 0; i < c.parents().size(); ++i)
      if (c.parent_cards()[i] != cards_[c.parents()[i]])
        throw ValidationError("CPD of '" + nm + "' disagrees with a parent's cardinality");
    slots[v] = std::move(c);
  }
  cpds_.reserve(dag_.size());
  for (NodeIndex v = 0; v < dag_.size(); ++v) {
    if (!slots[v]) throw ValidationError("missing CPD for '" + dag_.name(v) + "'");
    cpds_.push_back(std::move(*slots[v]));
  }
}

std::uint64_t Cbn::state_count() const noexcept { return saturating_product(cards_); }

void validate_cards(const Dag& dag, const std::vector<std::size_t>& cards) {
  if (cards.size() != dag.size()) throw ValidationError("one cardinality per node is required");
  for (NodeIndex v = 0; v < cards.size(); ++v)
    if (cards[v] < 2)
      throw ValidationError("cardinality of '" + dag.name(v) + "' must be at least 2");
}

void validate_assignment(const Dag& dag, const std::vector<std::size_t>& cards,
                         const Assignment& a) {
  for (const auto& [v, value] : a) {
    dag.check_node(v);
    if (value >= cards[v])
      throw ValidationError("value " + std::to_string(value) + " out of range for '" +
                            dag.name(v) + "'");
  }
}

void for_each_completion(const std::vector<std::size_t>& cards, const Assignment& fixed,
                         const std::function<void(std::span<const std::size_t>)>& fn) {
  std::vector<std::size_t> states(cards.size(), 0);
  std::vector<NodeIndex> free;
  std::vector<std::size_t> free_cards;
  for (NodeIndex v = 0; v < cards.size(); ++v) {
    if (auto it = fixed.find(v); it != fixed.end()) {
      states[v] = it->second;
    } else {
      free.push_back(v);
      free_cards.push_back(cards[v]);
    }
  }
  const std::uint64_t total = saturating_product(free_cards);
  if (total > kMaxEnumeratedStates)
    throw BudgetError("enumeration over " + std::to_string(total) + " states refused", total);
  for (std::uint64_t k = 0; k < total; ++k) {
    fn(states);
    for (std::size_t i = free.size(); i-- > 0;) {
      if (++states[free[i]] < cards[free[i]]) break;
      states[free[i]] = 0;
    }
  }
}

double joint_prob(const Cbn& cbn, std::span<const std::size_t> states) {
  double p = 1.0;
  for (NodeIndex v = 0; v < cbn.dag().size(); ++v) {
    p *= cbn.cpd(v).prob(states[v], states);
    if (p == 0.0) break;
  }
  return p;
}

double joint_prob(const Cbn& cbn, const Assignment& full) {
  validate_assignment(cbn.dag(), cbn.cards(), full);
  if (full.size() != cbn.dag().size())
    throw ValidationError("joint probability needs a value for every node");
  std::vector<std::size_t> states(cbn.dag().size());
  for (const auto& [v, value] : full) states[v] = value;
  return joint_prob(cbn, states);
}

double marginal_prob(const Cbn& cbn, const Assignment& event) {
  if (event.empty()) throw ValidationError("marginal probability needs a non-empty event");
  validate_assignment(cbn.dag(), cbn.cards(), event);
  double total = 0.0;
  for_each_completion(cbn.cards(), event,
                      [&](std::span<const std::size_t> s) { total += joint_prob(cbn, s); });
  return std::clamp(total, 0.0, 1.0);
}

double conditional_prob(const Cbn& cbn, const Assignment& event, const Assignment& given) {
  if (given.empty()) throw ValidationError("conditioning set must be non-empty");
  Assignment both = given;
  for (const auto& [v, value] : event)
    if (!both.emplace(v, value).second)
      throw ValidationError("event and conditioning set overlap on '" + cbn.dag().name(v) + "'");
  const double denom = marginal_prob(cbn, given);
  if (denom == 0.0) throw ZeroProbabilityError("conditioning event has probability zero");
  if (event.empty()) return 1.0;
  return marginal_prob(cbn, both) / denom;
}

}  // namespace tpsctl
