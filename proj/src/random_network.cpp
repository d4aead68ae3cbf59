#include "tpsctl/random_network.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tpsctl/error.hpp"

namespace tpsctl {

Dag random_dag(std::size_t count, double edge_probability, Rng& rng) {
  std::vector<std::size_t> rank(count);
  for (std::size_t i = 0; i < count; ++i) rank[i] = i;
  for (std::size_t i = count; i-- > 1;) std::swap(rank[i], rank[rng.below(i + 1)]);

  std::vector<std::string> names;
  for (std::size_t i = 0; i < count; ++i) names.push_back("n" + std::to_string(i));
  std::vector<Edge> edges;
  for (NodeIndex u = 0; u < count; ++u)
    for (NodeIndex v = 0; v < count; ++v)
      if (rank[u] < rank[v] && rng.bernoulli(edge_probability)) edges.push_back({u, v});
  return Dag(std::move(names), edges);
}

Cbn random_parametrization(const Dag& dag, const std::vector<std::size_t>& cards, Rng& rng) {
  validate_cards(dag, cards);
  std::vector<Cpd> cpds;
  for (NodeIndex v = 0; v < dag.size(); ++v) {
    const NodeSet& ps = dag.parents(v);
    std::vector<std::size_t> pcards;
    std::size_t rows = 1;
    for (NodeIndex p : ps) {
      pcards.push_back(cards[p]);
      rows *= cards[p];
    }
    std::vector<double> table;
    table.reserve(rows * cards[v]);
    for (std::size_t r = 0; r < rows; ++r) {
      std::vector<double> w(cards[v]);
      double sum = 0.0;
      for (double& x : w) {
        x = -std::log(1.0 - rng.uniform());
        sum += x;
      }
      for (double x : w) table.push_back(x / sum);
    }
    cpds.emplace_back(v, cards[v], ps, std::move(pcards), std::move(table));
  }
  return Cbn(dag, cards, std::move(cpds));
}

RandomNetwork random_network(std::uint64_t seed, const RandomNetworkOptions& options) {
  if (options.min_nodes < 1 || options.max_nodes < options.min_nodes)
    throw ValidationError("invalid node-count range for a random network");
  if (options.max_targets < 1) throw ValidationError("a random network needs at least one target");
  Rng rng(seed);
  const std::size_t n =
      options.min_nodes + rng.below(options.max_nodes - options.min_nodes + 1);
  Dag dag = random_dag(n, options.edge_probability, rng);
  const std::vector<std::size_t> cards(n, options.card);

  NodeSet intervenable;
  for (NodeIndex v = 0; v < n; ++v)
    if (rng.bernoulli(options.intervenable_probability)) intervenable.push_back(v);

  const std::size_t target_count = 1 + rng.below(std::min(options.max_targets, n));
  std::vector<NodeIndex> pool(n);
  for (NodeIndex v = 0; v < n; ++v) pool[v] = v;
  Assignment desired;
  for (std::size_t i = 0; i < target_count; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(pool[i], pool[j]);
    desired[pool[i]] = rng.below(options.card);
  }
  Cbn cbn = random_parametrization(dag, cards, rng);
  return {std::move(cbn), std::move(intervenable), std::move(desired)};
}

}  // namespace tpsctl
