#include "tpsctl/policy_search.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "tpsctl/error.hpp"

namespace tpsctl {

namespace {

constexpr double kPruneEpsilon = 1e-12;
constexpr double kOptimalityTolerance = 1e-11;
constexpr std::size_t kNoConflict = std::numeric_limits<std::size_t>::max();

}  // namespace

PolicySearch::PolicySearch(const Cbn& cbn, std::map<NodeIndex, NodeSet> scopes, Assignment desired)
    : cbn_(&cbn), scopes_(std::move(scopes)), desired_(std::move(desired)) {
  const Dag& dag = cbn.dag();
  if (desired_.empty()) throw ValidationError("the desired event must assign at least one target");
  validate_assignment(dag, cbn.cards(), desired_);

  for (auto& [driver, scope] : scopes_) {
    dag.check_node(driver);
    scope = canonical(std::move(scope));
    if (!is_subset(scope, ancestors(dag, driver)))
      throw ValidationError("policy scope of '" + dag.name(driver) + "' leaves its ancestry");
    std::uint64_t rows = 1;
    for (NodeIndex s : scope) {
      rows *= cbn.card(s);
      if (rows > kMaxSearchStates)
        throw BudgetError("policy table of '" + dag.name(driver) + "' is too large", rows);
    }
    infoset_base_[driver] = infoset_count_;
    infoset_count_ += rows;
    infoset_card_.insert(infoset_card_.end(), rows, cbn.card(driver));
  }

  NodeSet targets;
  for (const auto& [t, _] : desired_) targets.push_back(t);
  const NodeSet relevant = set_union(targets, ancestors_of_set(dag, targets));

  std::uint64_t layer = 1;
  std::uint64_t total = 1;
  level_offset_.push_back(0);
  for (NodeIndex v : topological_order(dag)) {
    if (!contains(relevant, v)) continue;
    Step s;
    s.node = v;
    s.card = cbn.card(v);
    if (auto it = desired_.find(v); it != desired_.end()) {
      s.is_target = true;
      s.desired = it->second;
    }
    if (auto it = scopes_.find(v); it != scopes_.end()) {
      s.decision = true;
      s.scope = it->second;
      s.strides.assign(s.scope.size(), 1);
      for (std::size_t i = s.scope.size(); i-- > 1;)
        s.strides[i - 1] = s.strides[i] * cbn.card(s.scope[i]);
      s.infoset_base = infoset_base_.at(v);
    }
    steps_.push_back(std::move(s));
    level_offset_.push_back(level_offset_.back() + layer);
    layer *= cbn.card(v);
    total += layer;
    if (total > 2 * kMaxSearchStates)
      throw BudgetError("relevant state space too large for exact policy search", total);
  }
  choice_.assign(level_offset_.back() + layer, 0);
  states_.assign(dag.size(), 0);
  fixed_.assign(infoset_count_, -1);
  seen_.assign(infoset_count_, -1);
}

std::size_t PolicySearch::infoset_of(const Step& s) const {
  std::size_t id = s.infoset_base;
  for (std::size_t i = 0; i < s.scope.size(); ++i) id += states_[s.scope[i]] * s.strides[i];
  return id;
}

double PolicySearch::relax(std::size_t k, std::size_t prefix) {
  if (k == steps_.size()) return 1.0;
  const Step& s = steps_[k];
  const std::size_t here = level_offset_[k] + prefix;
  const std::size_t base = prefix * s.card;

  if (!s.decision) {
    const Cpd& cpd = cbn_->cpd(s.node);
    const auto row = cpd.row(cpd.row_index(states_));
    if (s.is_target) {
      const double p = row[s.desired];
      if (p == 0.0) return 0.0;
      states_[s.node] = s.desired;
      return p * relax(k + 1, base + s.desired);
    }
    double total = 0.0;
    for (std::size_t v = 0; v < s.card; ++v) {
      if (row[v] == 0.0) continue;
      states_[s.node] = v;
      total += row[v] * relax(k + 1, base + v);
    }
    return total;
  }

  const int forced = fixed_[infoset_of(s)];
  if (forced >= 0) {
    const auto v = static_cast<std::size_t>(forced);
    choice_[here] = v;
    if (s.is_target && v != s.desired) return 0.0;
    states_[s.node] = v;
    return relax(k + 1, base + v);
  }
  std::size_t best_v = 0;
  double best = 0.0;
  for (std::size_t v = 0; v < s.card; ++v) {
    double value = 0.0;
    if (!s.is_target || v == s.desired) {
      states_[s.node] = v;
      value = relax(k + 1, base + v);
    }
    const bool better = v == 0 || (dir_ == Direction::Max ? value > best : value < best);
    if (better) {
      best = value;
      best_v = v;
    }
  }
  choice_[here] = best_v;
  return best;
}

void PolicySearch::trace(std::size_t k, std::size_t prefix) {
  if (k == steps_.size()) return;
  const Step& s = steps_[k];
  const std::size_t base = prefix * s.card;
  if (!s.decision) {
    const Cpd& cpd = cbn_->cpd(s.node);
    const auto row = cpd.row(cpd.row_index(states_));
    for (std::size_t v = 0; v < s.card; ++v) {
      if (row[v] == 0.0 || (s.is_target && v != s.desired)) continue;
      states_[s.node] = v;
      trace(k + 1, base + v);
    }
    return;
  }
  const std::size_t v = choice_[level_offset_[k] + prefix];
  const std::size_t id = infoset_of(s);
  if (fixed_[id] < 0) {
    if (seen_[id] < 0)
      seen_[id] = static_cast<int>(v);
    else if (seen_[id] != static_cast<int>(v))
      conflict_ = std::min(conflict_, id);
  }
  if (s.is_target && v != s.desired) return;
  states_[s.node] = v;
  trace(k + 1, base + v);
}

bool PolicySearch::branch() {
  if (++relaxations_ > budget_)
    throw BudgetError("exact policy search exceeded its budget of " + std::to_string(budget_) +
                          " relaxations",
                      relaxations_);
  const double bound = relax(0, 0);
  const bool promising = dir_ == Direction::Max ? bound > incumbent_ + kPruneEpsilon
                                                : bound < incumbent_ - kPruneEpsilon;
  if (!promising) return false;

  std::fill(seen_.begin(), seen_.end(), -1);
  conflict_ = kNoConflict;
  trace(0, 0);
  if (conflict_ == kNoConflict) {
    incumbent_ = bound;
    found_ = true;
    return stop_early_;
  }

  const std::size_t c = conflict_;
  // The value preferred by the first reachable history goes first.
  const int preferred = seen_[c];
  const std::size_t card = infoset_card_[c];

  std::vector<int> order{preferred};
  for (int v = 0; v < static_cast<int>(card); ++v)
    if (v != preferred) order.push_back(v);
  for (int v : order) {
    fixed_[c] = v;
    if (branch()) {
      fixed_[c] = -1;
      return true;
    }
  }
  fixed_[c] = -1;
  return false;
}

double PolicySearch::run(Direction dir, std::uint64_t budget, double incumbent, bool stop_early) {
  dir_ = dir;
  budget_ = relaxations_ + budget;
  incumbent_ = incumbent;
  stop_early_ = stop_early;
  found_ = false;
  branch();
  return incumbent_;
}

double PolicySearch::optimal_value(Direction dir, std::uint64_t budget) {
  std::fill(fixed_.begin(), fixed_.end(), -1);
  const double start = dir == Direction::Max ? -std::numeric_limits<double>::infinity()
                                             : std::numeric_limits<double>::infinity();
  return run(dir, budget, start, false);
}

PolicySearch::Optimum PolicySearch::optimal_policy(Direction dir, std::uint64_t budget) {
  const std::uint64_t stop_at = relaxations_ + budget;
  const double opt = optimal_value(dir, budget);

  std::vector<bool> relevant_driver(infoset_count_, false);
  for (const Step& s : steps_) {
    if (!s.decision) continue;
    std::size_t rows = 1;
    for (NodeIndex m : s.scope) rows *= cbn_->card(m);
    for (std::size_t i = 0; i < rows; ++i) relevant_driver[s.infoset_base + i] = true;
  }
  std::fill(fixed_.begin(), fixed_.end(), -1);
  const double threshold = dir == Direction::Max ? opt - kOptimalityTolerance
                                                 : opt + kOptimalityTolerance;
  for (const auto& [driver, b] : infoset_base_) {
    const std::size_t card = cbn_->card(driver);
    std::size_t rows = 1;
    for (NodeIndex m : scopes_.at(driver)) rows *= cbn_->card(m);
    for (std::size_t id = b; id < b + rows; ++id) {
      if (!relevant_driver[id]) {
        fixed_[id] = 0;
        continue;
      }
      bool placed = false;
      for (std::size_t v = 0; v < card && !placed; ++v) {
        fixed_[id] = static_cast<int>(v);
        if (relaxations_ >= stop_at)
          throw BudgetError("exact policy search exceeded its budget", relaxations_);
        run(dir, stop_at - relaxations_, threshold, true);
        placed = found_;
      }
      if (!placed) throw Error("internal error: no optimal completion for a policy row");
    }
  }

  Optimum out;
  out.value = relax(0, 0);
  for (const auto& [driver, b] : infoset_base_) {
    std::size_t rows = 1;
    for (NodeIndex m : scopes_.at(driver)) rows *= cbn_->card(m);
    auto& ch = out.choices[driver];
    for (std::size_t id = b; id < b + rows; ++id) ch.push_back(static_cast<std::size_t>(fixed_[id]));
  }
  return out;
}

}  // namespace tpsctl
