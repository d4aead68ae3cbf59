#include "tpsctl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tpsctl/error.hpp"
#include "tpsctl/format.hpp"
#include "tpsctl/random_network.hpp"

namespace tpsctl {

namespace {

std::vector<NodeSet> all_subsets(const NodeSet& vs) {
  std::vector<NodeSet> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << vs.size()); ++mask) {
    NodeSet s;
    for (std::size_t i = 0; i < vs.size(); ++i)
      if (mask >> i & 1U) s.push_back(vs[i]);
    out.push_back(std::move(s));
  }
  return out;
}

NodeSet drivers_of(const Instance& in) {
  return c_star(ControlProblem(in.cbn.dag(), in.intervenable, in.desired, Objective::MaxMax)).members;
}

std::string class_label(IpClass c) { return "class-" + c.to_string(); }

// All distributions over `card` values whose entries are multiples of 1/4.
std::vector<std::vector<double>> grid_rows(std::size_t card) {
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> parts(card, 0);
  auto rec = [&](auto&& self, std::size_t i, std::size_t left) -> void {
    if (i + 1 == card) {
      parts[i] = left;
      std::vector<double> row;
      for (std::size_t q : parts) row.push_back(static_cast<double>(q) / 4.0);
      out.push_back(std::move(row));
      return;
    }
    for (std::size_t q = 0; q <= left; ++q) {
      parts[i] = q;
      self(self, i + 1, left - q);
    }
  };
  rec(rec, 0, 4);
  return out;
}

}  // namespace

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::Lemma3: return "lemma3";
    case Suite::Sufficiency: return "sufficiency";
    case Suite::Usm: return "usm";
    case Suite::Extremality: return "extremality";
    case Suite::Minimax: return "minimax";
    case Suite::MinMin: return "minmin";
    case Suite::All: return "all";
  }
  return "?";
}

Suite parse_suite(const std::string& text) {
  for (Suite s : {Suite::Lemma3, Suite::Sufficiency, Suite::Usm, Suite::Extremality, Suite::Minimax,
                  Suite::MinMin, Suite::All})
    if (text == to_string(s)) return s;
  throw ValidationError("unknown suite '" + text +
                        "' (expected lemma3, sufficiency, usm, extremality, minimax, minmin or all)");
}

bool all_pass(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

double stochastic_value(const Cbn& cbn, const std::map<NodeIndex, Cpd>& policies,
                        const Assignment& desired) {
  std::vector<const Cpd*> mechanism(cbn.dag().size());
  for (NodeIndex v = 0; v < mechanism.size(); ++v) {
    auto it = policies.find(v);
    mechanism[v] = it == policies.end() ? &cbn.cpd(v) : &it->second;
  }
  double total = 0.0;
  for_each_completion(cbn.cards(), desired, [&](std::span<const std::size_t> s) {
    double p = 1.0;
    for (NodeIndex v = 0; v < mechanism.size() && p != 0.0; ++v) p *= mechanism[v]->prob(s[v], s);
    total += p;
  });
  return total;
}

std::vector<Check> verify_lemma3(const Instance& in, const VerifyOptions& options) {
  for (IpClass c : options.lemma3_classes)
    if (c.level == 0)
      throw ValidationError("lemma3 suite refused: the bounds hold only for policy classes j >= 1, not class-0");
  check_oracle_budget(in.cbn, in.intervenable);
  const Dag& dag = in.cbn.dag();
  const double base = marginal_prob(in.cbn, in.desired);
  const auto subsets = all_subsets(canonical(in.intervenable));

  std::vector<Check> out;
  for (IpClass cls : options.lemma3_classes) {
    Check check{"lemma3 " + class_label(cls) + ": min <= P(desired) <= max for every subset", true, {}};
    for (const NodeSet& x : subsets) {
      const double lo = optimal_value(in.cbn, x, cls, in.desired, Direction::Min, options.search_budget);
      const double hi = optimal_value(in.cbn, x, cls, in.desired, Direction::Max, options.search_budget);
      if (lo > base + options.tolerance || base > hi + options.tolerance) {
        check.pass = false;
        check.detail = "subset " + format_set(dag, x) + ": min " + format_probability(lo) + ", P(desired) " +
                       format_probability(base) + ", max " + format_probability(hi);
        break;
      }
    }
    if (check.pass)
      check.detail = std::to_string(subsets.size()) + " subsets, P(desired) " + format_probability(base);
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<Check> verify_sufficiency(const Instance& in, const VerifyOptions& options) {
  const Dag& dag = in.cbn.dag();
  const NodeSet drivers = drivers_of(in);
  std::vector<Check> out;
  for (Direction dir : {Direction::Max, Direction::Min}) {
    const char* label = dir == Direction::Max ? "max" : "min";
    const double at_drivers =
        optimal_value(in.cbn, drivers, IpClass::infinite(), in.desired, dir, options.search_budget);
    const auto best = best_over_subsets(in.cbn, in.intervenable, IpClass::infinite(), in.desired, dir,
                                        options.search_budget);
    Check check{std::string("sufficiency ") + label + ": C* drivers match the best subset", true, {}};
    check.pass = std::abs(at_drivers - best.value) <= options.tolerance;
    check.detail = "drivers " + format_set(dag, drivers) + " reach " + format_probability(at_drivers) +
                   "; best subset " + format_set(dag, best.subset) + " reaches " +
                   format_probability(best.value);
    out.push_back(std::move(check));
  }
  return out;
}

std::vector<Check> verify_usm(const Dag& dag, const NodeSet& intervenable, const NodeSet& targets,
                              const VerifyOptions& options) {
  Assignment placeholder;
  for (NodeIndex t : targets) placeholder[t] = 1;
  const NodeSet drivers =
      c_star(ControlProblem(dag, intervenable, placeholder, Objective::MaxMax)).members;
  const AdversarialInstance adv = usm_adversarial_cbn(dag, drivers, targets);
  check_oracle_budget(adv.cbn, drivers);

  std::vector<Check> out;
  InterventionPair all_on;
  for (NodeIndex d : drivers) all_on.add(atomic_policy(d, 1, 2));
  const double full = interventional_prob(adv.cbn, all_on, adv.desired);
  out.push_back({"usm: forcing every driver to 1 yields P(desired) = 1", full == 1.0,
                 "drivers " + format_set(dag, drivers) + " give " + format_probability(full)});

  Check proper{"usm: no class-inf policy on a proper subset yields P(desired) > 0", true, {}};
  std::size_t checked = 0;
  for (const NodeSet& s : all_subsets(drivers)) {
    if (s.size() == drivers.size()) continue;
    ++checked;
    const double v =
        optimal_value(adv.cbn, s, IpClass::infinite(), adv.desired, Direction::Max, options.search_budget);
    if (v != 0.0) {
      proper.pass = false;
      proper.detail = "subset " + format_set(dag, s) + " reaches " + format_probability(v);
      break;
    }
  }
  if (proper.pass) proper.detail = std::to_string(checked) + " proper subsets of " + format_set(dag, drivers);
  out.push_back(std::move(proper));
  return out;
}

std::vector<Check> verify_extremality(const Instance& in, const VerifyOptions& options) {
  const Dag& dag = in.cbn.dag();
  check_oracle_budget(in.cbn, in.intervenable);
  std::vector<NodeSet> sets{drivers_of(in)};
  if (canonical(in.intervenable) != sets.front()) sets.push_back(canonical(in.intervenable));

  std::vector<Check> out;
  Rng rng(options.seed);
  for (const NodeSet& drivers : sets) {
    for (IpClass cls : {IpClass{0}, IpClass{1}, IpClass::infinite()}) {
      const double det_max =
          optimal_value(in.cbn, drivers, cls, in.desired, Direction::Max, options.search_budget);
      const double det_min =
          optimal_value(in.cbn, drivers, cls, in.desired, Direction::Min, options.search_budget);

      // One grid coordinate per policy row.
      struct Slot {
        NodeIndex driver;
        std::size_t row;
      };
      const auto scopes = class_scopes(dag, drivers, cls);
      std::vector<Slot> slots;
      std::map<NodeIndex, std::vector<std::vector<double>>> choices;
      for (const auto& [d, scope] : scopes) {
        std::size_t rows = 1;
        for (NodeIndex s : scope) rows *= in.cbn.card(s);
        for (std::size_t r = 0; r < rows; ++r) slots.push_back({d, r});
        choices[d] = grid_rows(in.cbn.card(d));
      }
      std::uint64_t total = 1;
      for (const Slot& s : slots) {
        const std::uint64_t k = choices[s.driver].size();
        total = total > options.grid_budget ? total : total * k;
      }
      const bool exhaustive = total <= options.grid_budget;
      const std::uint64_t points = exhaustive ? total : options.grid_budget;

      std::vector<std::size_t> pick(slots.size(), 0);
      double grid_max = -1.0, grid_min = 2.0;
      std::string worst;
      bool pass = true;
      for (std::uint64_t n = 0; n < points; ++n) {
        if (!exhaustive)
          for (std::size_t i = 0; i < slots.size(); ++i) pick[i] = rng.below(choices[slots[i].driver].size());
        std::map<NodeIndex, std::vector<double>> tables;
        for (std::size_t i = 0; i < slots.size(); ++i) {
          const auto& row = choices[slots[i].driver][pick[i]];
          auto& t = tables[slots[i].driver];
          t.insert(t.end(), row.begin(), row.end());
        }
        std::map<NodeIndex, Cpd> policies;
        for (auto& [d, t] : tables) {
          std::vector<std::size_t> pcards;
          for (NodeIndex s : scopes.at(d)) pcards.push_back(in.cbn.card(s));
          policies.emplace(d, Cpd(d, in.cbn.card(d), scopes.at(d), std::move(pcards), std::move(t)));
        }
        const double v = stochastic_value(in.cbn, policies, in.desired);
        grid_max = std::max(grid_max, v);
        grid_min = std::min(grid_min, v);
        if (pass && (v > det_max + options.tolerance || v < det_min - options.tolerance)) {
          pass = false;
          std::ostringstream os;
          os << "grid policy reaches " << format_probability(v) << " against deterministic ["
             << format_probability(det_min) << ", " << format_probability(det_max) << "]:";
          for (const auto& [d, c] : policies) {
            os << " " << dag.name(d) << " =";
            for (double x : c.table()) os << ' ' << x;
          }
          worst = os.str();
        }
        if (exhaustive)
          for (std::size_t i = slots.size(); i-- > 0;) {
            if (++pick[i] < choices[slots[i].driver].size()) break;
            pick[i] = 0;
          }
      }
      Check check{"extremality " + format_set(dag, drivers) + " " + class_label(cls) +
                      ": 0.25-grid stochastic policies stay within the deterministic optimum",
                  pass, {}};
      check.detail = pass ? std::to_string(points) + (exhaustive ? " grid points (exhaustive)" : " grid points (sampled)") +
                                "; grid [" + format_probability(grid_min) + ", " + format_probability(grid_max) +
                                "] vs deterministic [" + format_probability(det_min) + ", " +
                                format_probability(det_max) + "]"
                          : worst;
      out.push_back(std::move(check));
    }
  }
  return out;
}

std::vector<Check> verify_minimax(const Instance& in, const VerifyOptions& options) {
  const Dag& dag = in.cbn.dag();
  check_oracle_budget(in.cbn, in.intervenable);
  const double base = marginal_prob(in.cbn, in.desired);
  double minimax = 2.0, maximin = -1.0;
  NodeSet minimax_at, maximin_at;
  double empty_max = 0.0, empty_min = 0.0;
  for (const NodeSet& x : all_subsets(canonical(in.intervenable))) {
    const double hi = optimal_value(in.cbn, x, IpClass::infinite(), in.desired, Direction::Max, options.search_budget);
    const double lo = optimal_value(in.cbn, x, IpClass::infinite(), in.desired, Direction::Min, options.search_budget);
    if (x.empty()) {
      empty_max = hi;
      empty_min = lo;
    }
    if (hi < minimax - 1e-12) {
      minimax = hi;
      minimax_at = x;
    }
    if (lo > maximin + 1e-12) {
      maximin = lo;
      maximin_at = x;
    }
  }
  std::vector<Check> out;
  out.push_back({"minimax: min over subsets of the class-inf max equals P(desired), attained by {}",
                 std::abs(minimax - base) <= options.tolerance && std::abs(empty_max - base) <= options.tolerance,
                 "min-max " + format_probability(minimax) + " at " + format_set(dag, minimax_at) +
                     ", empty set " + format_probability(empty_max) + ", P(desired) " + format_probability(base)});
  out.push_back({"maximin: max over subsets of the class-inf min equals P(desired), attained by {}",
                 std::abs(maximin - base) <= options.tolerance && std::abs(empty_min - base) <= options.tolerance,
                 "max-min " + format_probability(maximin) + " at " + format_set(dag, maximin_at) +
                     ", empty set " + format_probability(empty_min) + ", P(desired) " + format_probability(base)});
  return out;
}

std::vector<Check> verify_min_min(const Instance& in, const VerifyOptions& options) {
  const Dag& dag = in.cbn.dag();
  const ControlProblem problem(dag, in.intervenable, in.desired, Objective::MinMin);
  const NodeSet hit = problem.intervenable_targets();
  if (hit.empty())
    return {{"minmin: an intervenable target yields value 0 with one driver", true,
             "vacuous: no target is intervenable"}};
  const SolveResult r = solve(problem, &in.cbn, options.search_budget);
  const bool ok = r.value && *r.value == 0.0 && r.drivers.members.size() == 1;
  std::vector<Check> out;
  out.push_back({"minmin: an intervenable target yields value 0 with one driver", ok,
                 "drivers " + format_set(dag, r.drivers.members) + " value " +
                     (r.value ? format_probability(*r.value) : std::string("structural-only"))});
  check_oracle_budget(in.cbn, in.intervenable);
  const auto oracle = best_over_subsets(in.cbn, in.intervenable, IpClass::infinite(), in.desired,
                                        Direction::Min, options.search_budget);
  out.push_back({"minmin: exhaustive oracle agrees on the optimum 0", oracle.value <= options.tolerance,
                 "oracle " + format_probability(oracle.value) + " at " + format_set(dag, oracle.subset)});
  return out;
}

}  // namespace tpsctl
