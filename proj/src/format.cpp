#include "tpsctl/format.hpp"

#include <cstdio>

#include "tpsctl/network_file.hpp"

namespace tpsctl {

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9f", p);
  return buf;
}

std::string format_set(const Dag& dag, const NodeSet& set) {
  std::string out = "{";
  for (NodeIndex v : canonical(set)) {
    if (out.size() > 1) out += ", ";
    out += dag.name(v);
  }
  return out + "}";
}

std::string format_assignment(const Dag& dag, const Assignment& a) {
  std::string out;
  for (const auto& [v, value] : a) {
    if (!out.empty()) out += ", ";
    out += dag.name(v) + "=" + std::to_string(value);
  }
  return out;
}

std::string format_pair(const Dag& dag, const InterventionPair& pair, const std::string& indent) {
  std::string out;
  for (const auto& [v, policy] : pair.policies()) {
    const Cpd& t = policy.table();
    out += indent + dag.name(v);
    if (!t.parents().empty()) {
      out += " |";
      for (NodeIndex p : t.parents()) out += " " + dag.name(p);
    }
    out += " :";
    for (std::size_t r = 0; r < t.row_count(); ++r) {
      if (r > 0) out += " ;";
      for (double x : t.row(r)) out += " " + format_number(x);
    }
    out += "\n";
  }
  return out;
}

}  // namespace tpsctl
