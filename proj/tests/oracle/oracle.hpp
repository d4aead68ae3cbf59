#pragma once

// Brute-force reference computations used to cross-check the library. They
// share only the data types with it: joint tables, policy enumeration and
// independence tests are recomputed here from the raw CPD tables.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "tpsctl/cbn.hpp"

namespace oracle {

using tpsctl::Assignment;
using tpsctl::Cbn;
using tpsctl::NodeIndex;
using tpsctl::NodeSet;

/// Full joint distribution, states enumerated with node 0 least significant.
/// `override` replaces the table of selected nodes; each replacement is a
/// row-major table over the given parents.
struct Table {
  std::vector<NodeIndex> parents;
  std::vector<double> values;
};
std::vector<double> joint(const Cbn& cbn, const std::map<NodeIndex, Table>& override = {});

double event_prob(const Cbn& cbn, const std::vector<double>& joint, const Assignment& event);

/// Optimum over every deterministic policy with the given scopes, by plain
/// enumeration. Returns nothing when the enumeration would exceed `limit`
/// policy combinations.
std::optional<double> brute_force_optimum(const Cbn& cbn, const std::map<NodeIndex, NodeSet>& scopes,
                                          const Assignment& desired, bool maximize,
                                          std::uint64_t limit = std::uint64_t{1} << 16);

/// Scope of node v for class `level` (SIZE_MAX for infinity), by repeated
/// parent expansion.
NodeSet class_scope(const Cbn& cbn, NodeIndex v, std::size_t level);

/// Whether A and B are independent given Z in the joint, to `tolerance`.
bool independent(const Cbn& cbn, const std::vector<double>& joint, NodeIndex a, NodeIndex b,
                 const NodeSet& z, double tolerance = 1e-9);

/// Reference d-separation: no active trail between a and b given z, found by
/// enumerating every simple path of the skeleton.
bool d_separated_by_paths(const Cbn& cbn, NodeIndex a, NodeIndex b, const NodeSet& z);

}  // namespace oracle
