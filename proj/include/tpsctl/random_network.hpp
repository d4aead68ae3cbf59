#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "tpsctl/cbn.hpp"
#include "tpsctl/graph.hpp"

namespace tpsctl {

/// Seeded generator whose derived draws are identical on every platform
/// (only the raw mt19937_64 stream is used; no std distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [0, n); n > 0.
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

struct RandomNetworkOptions {
  std::size_t min_nodes = 3;
  std::size_t max_nodes = 6;
  double edge_probability = 0.5;
  double intervenable_probability = 0.5;
  std::size_t max_targets = 2;
  std::size_t card = 2;
};

struct RandomNetwork {
  Cbn cbn;
  NodeSet intervenable;
  Assignment desired;
};

/// DAG on nodes n0..n{count-1}: a hidden random ranking orients the edges,
/// each admissible pair joined with probability `edge_probability`.
Dag random_dag(std::size_t count, double edge_probability, Rng& rng);

/// Every CPD row drawn from a flat Dirichlet.
Cbn random_parametrization(const Dag& dag, const std::vector<std::size_t>& cards, Rng& rng);

/// Graph, parametrization, intervenable set and desired target realization.
RandomNetwork random_network(std::uint64_t seed, const RandomNetworkOptions& options = {});

}  // namespace tpsctl
