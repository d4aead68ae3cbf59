#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tpsctl/cbn.hpp"
#include "tpsctl/controllability.hpp"
#include "tpsctl/graph.hpp"
#include "tpsctl/intervention.hpp"

namespace tpsctl {

inline constexpr int kNetworkSchemaVersion = 1;

/// In-memory form of a network file.
///
/// The text format is line oriented; `#` starts a comment:
///
///     tpsnet 1
///     node x 2                      # name, cardinality (default 2)
///     edge x y                      # parent, child
///     intervenable y                # zero or more names; may repeat
///     target o 1                    # desired value index
///     cpd y | x : 0.1 0.9 ; 1 0     # rows in row-major parent order
///     policy y | x : 0 1 ; 1 0      # same layout; scope after '|'
///
/// Probabilities are decimals or fractions such as 1/3. Either every node
/// has a cpd line or none has.
struct NetworkFile {
  Dag dag;
  std::vector<std::size_t> cards;
  NodeSet intervenable;
  Assignment targets;
  std::optional<Cbn> cbn;
  InterventionPair policies;

  /// Throws ValidationError when the file carries no CPDs.
  const Cbn& require_cbn() const;
  ControlProblem problem(Objective objective) const;

  bool operator==(const NetworkFile&) const = default;
};

NetworkFile parse_network(std::string_view text);
NetworkFile load_network(const std::filesystem::path& path);

/// Canonical text: nodes in insertion order, edges by (parent, child),
/// probabilities in shortest round-trip form.
std::string serialize_network(const NetworkFile& file);
void save_network(const NetworkFile& file, const std::filesystem::path& path);

/// Shortest decimal that parses back to exactly `x`.
std::string format_number(double x);

/// Parses a decimal ("0.25", "1e-3") or a fraction ("1/3").
std::optional<double> parse_number(std::string_view token);

}  // namespace tpsctl
