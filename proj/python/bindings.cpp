#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tpsctl/controllability.hpp"
#include "tpsctl/error.hpp"
#include "tpsctl/format.hpp"
#include "tpsctl/network_file.hpp"
#include "tpsctl/random_network.hpp"
#include "tpsctl/verify.hpp"

namespace py = pybind11;
using namespace tpsctl;

namespace {

NodeSet indices(const Dag& dag, const std::vector<std::string>& names) {
  NodeSet out;
  for (const auto& n : names) out.push_back(dag.index(n));
  return canonical(out);
}

std::vector<std::string> names_of(const Dag& dag, const NodeSet& set) {
  std::vector<std::string> out;
  for (NodeIndex v : set) out.push_back(dag.name(v));
  return out;
}

IpClass class_arg(const py::object& cls) {
  if (py::isinstance<py::int_>(cls)) return IpClass{cls.cast<std::size_t>()};
  return IpClass::parse(cls.cast<std::string>());
}

Direction direction_arg(const std::string& d) {
  if (d == "max") return Direction::Max;
  if (d == "min") return Direction::Min;
  throw ValidationError("direction must be 'max' or 'min'");
}

py::dict policy_dict(const Dag& dag, const InterventionPair& pair) {
  py::dict out;
  for (const auto& [v, policy] : pair.policies()) {
    py::list rows;
    const Cpd& t = policy.table();
    for (std::size_t r = 0; r < t.row_count(); ++r) {
      auto row = t.row(r);
      rows.append(std::vector<double>(row.begin(), row.end()));
    }
    out[py::str(dag.name(v))] = py::make_tuple(names_of(dag, t.parents()), rows);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Driver-set identification and policy optimization for causal Bayesian networks";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ZeroProbabilityError>(m, "ZeroProbabilityError", base.ptr());
  py::register_exception<BudgetError>(m, "BudgetError", base.ptr());

  py::class_<NetworkFile>(m, "Network")
      .def_property_readonly("nodes", [](const NetworkFile& f) { return f.dag.names(); })
      .def_property_readonly("edges",
                             [](const NetworkFile& f) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const Edge& e : f.dag.edges())
                                 out.emplace_back(f.dag.name(e.parent), f.dag.name(e.child));
                               return out;
                             })
      .def_property_readonly("cards", [](const NetworkFile& f) { return f.cards; })
      .def_property_readonly("intervenable", [](const NetworkFile& f) { return names_of(f.dag, f.intervenable); })
      .def_property_readonly("targets",
                             [](const NetworkFile& f) {
                               std::map<std::string, std::size_t> out;
                               for (const auto& [t, v] : f.targets) out[f.dag.name(t)] = v;
                               return out;
                             })
      .def_property_readonly("has_cpds", [](const NetworkFile& f) { return f.cbn.has_value(); })
      .def_property_readonly("policies", [](const NetworkFile& f) { return policy_dict(f.dag, f.policies); })
      .def("serialize", &serialize_network)
      .def("save", [](const NetworkFile& f, const std::filesystem::path& p) { save_network(f, p); })
      .def("drivers",
           [](const NetworkFile& f) { return names_of(f.dag, c_star(f.problem(Objective::MaxMax)).members); },
           "C* driver set")
      .def("probability",
           [](const NetworkFile& f) { return interventional_prob(f.require_cbn(), f.policies, f.targets); },
           "P(targets | do[file policies])")
      .def("marginal", [](const NetworkFile& f) { return marginal_prob(f.require_cbn(), f.targets); })
      .def(
          "solve",
          [](const NetworkFile& f, const std::string& objective, std::uint64_t budget) {
            const Cbn* cbn = f.cbn ? &*f.cbn : nullptr;
            const SolveResult r = solve(f.problem(parse_objective(objective)), cbn, budget);
            py::dict out;
            out["drivers"] = names_of(f.dag, r.drivers.members);
            out["provenance"] = to_string(r.drivers.provenance);
            out["value"] = r.value ? py::cast(*r.value) : py::none();
            out["witness"] = r.pair ? py::object(policy_dict(f.dag, *r.pair)) : py::none();
            return out;
          },
          py::arg("objective") = "max-max", py::arg("budget") = kDefaultSearchBudget)
      .def(
          "optimal_value",
          [](const NetworkFile& f, const std::vector<std::string>& drivers, const py::object& cls,
             const std::string& direction, std::uint64_t budget) {
            const auto r = optimal_policy_value(f.require_cbn(), indices(f.dag, drivers), class_arg(cls), f.targets,
                                                direction_arg(direction), budget);
            return py::make_tuple(r.value, policy_dict(f.dag, r.witness));
          },
          py::arg("drivers"), py::arg("policy_class") = "inf", py::arg("direction") = "max",
          py::arg("budget") = kDefaultSearchBudget, "Optimum and lexicographically smallest optimal witness")
      .def(
          "verify",
          [](const NetworkFile& f, const std::string& suite, std::optional<std::uint64_t> seed) {
            VerifyOptions options;
            if (seed) options.seed = *seed;
            std::optional<Cbn> drawn;
            const Suite s = parse_suite(suite);
            if (s != Suite::Usm && !f.cbn) {
              if (!seed) throw ValidationError("network has no cpds; pass seed to draw a random parametrization");
              Rng rng(*seed);
              drawn = random_parametrization(f.dag, f.cards, rng);
            }
            std::vector<Check> checks;
            auto add = [&](std::vector<Check> c) { checks.insert(checks.end(), c.begin(), c.end()); };
            auto run = [&](Suite which) {
              if (which == Suite::Usm) {
                NodeSet targets;
                for (const auto& [t, _] : f.targets) targets.push_back(t);
                add(verify_usm(f.dag, f.intervenable, targets, options));
                return;
              }
              const Instance in{drawn ? *drawn : *f.cbn, f.intervenable, f.targets};
              if (which == Suite::Lemma3) add(verify_lemma3(in, options));
              if (which == Suite::Sufficiency) add(verify_sufficiency(in, options));
              if (which == Suite::Extremality) add(verify_extremality(in, options));
              if (which == Suite::Minimax) add(verify_minimax(in, options));
              if (which == Suite::MinMin) add(verify_min_min(in, options));
            };
            if (s == Suite::All)
              for (Suite w : {Suite::Lemma3, Suite::Sufficiency, Suite::Usm, Suite::Extremality, Suite::Minimax,
                              Suite::MinMin})
                run(w);
            else
              run(s);
            std::vector<std::tuple<std::string, bool, std::string>> out;
            for (const Check& c : checks) out.emplace_back(c.property, c.pass, c.detail);
            return out;
          },
          py::arg("suite") = "all", py::arg("seed") = py::none(), "List of (property, passed, detail)")
      .def(
          "d_separated",
          [](const NetworkFile& f, const std::vector<std::string>& a, const std::vector<std::string>& b,
             const std::vector<std::string>& z) {
            return d_separated(f.dag, indices(f.dag, a), indices(f.dag, b), indices(f.dag, z));
          },
          py::arg("a"), py::arg("b"), py::arg("given") = std::vector<std::string>{})
      .def("usm",
           [](const NetworkFile& f) {
             const ControlProblem p = f.problem(Objective::MaxMax);
             AdversarialInstance adv = usm_adversarial_cbn(f.dag, c_star(p).members, p.targets());
             return NetworkFile{f.dag, adv.cbn.cards(), f.intervenable, adv.desired, std::move(adv.cbn), {}};
           },
           "Adversarial parametrization for the C* drivers")
      .def("__eq__", [](const NetworkFile& a, const NetworkFile& b) { return a == b; })
      .def("__repr__", [](const NetworkFile& f) {
        return "<Network nodes=" + std::to_string(f.dag.size()) + " edges=" + std::to_string(f.dag.edge_count()) +
               " drivers=" + format_set(f.dag, c_star(f.problem(Objective::MaxMax)).members) + ">";
      });

  m.def("parse", &parse_network, py::arg("text"));
  m.def("load", &load_network, py::arg("path"));
  m.def(
      "random_network",
      [](std::uint64_t seed, std::optional<std::size_t> nodes) {
        RandomNetworkOptions options;
        if (nodes) options.min_nodes = options.max_nodes = *nodes;
        RandomNetwork net = random_network(seed, options);
        return NetworkFile{net.cbn.dag(), net.cbn.cards(), net.intervenable, net.desired, net.cbn, {}};
      },
      py::arg("seed"), py::arg("nodes") = py::none());
}
