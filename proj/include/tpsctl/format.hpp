#pragma once

#include <string>

#include "tpsctl/cbn.hpp"
#include "tpsctl/graph.hpp"
#include "tpsctl/intervention.hpp"

namespace tpsctl {

/// Fixed nine-decimal rendering used in every report.
std::string format_probability(double p);

/// "{a, b}" in canonical order; "{}" when empty.
std::string format_set(const Dag& dag, const NodeSet& set);

/// "a=1, b=0" in canonical order.
std::string format_assignment(const Dag& dag, const Assignment& a);

/// One line per policy: "y | x : 0 1 ; 1 0".
std::string format_pair(const Dag& dag, const InterventionPair& pair, const std::string& indent);

}  // namespace tpsctl
