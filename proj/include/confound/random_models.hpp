#pragma once

#include <cstdint>
#include <random>

#include "confound/discrete_model.hpp"
#include "confound/graph.hpp"

namespace confound {

/// Seeded generator whose output depends only on the seed: raw
/// mt19937_64 words, with the integer and coin-flip helpers defined here
/// rather than through the library's distribution classes.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform on [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  /// Uniform double on [0, 1) from the top 53 bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool coin(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

struct RandomDagConfig {
  /// Node count is drawn uniformly from [min_nodes, max_nodes].
  std::size_t min_nodes = 2;
  std::size_t max_nodes = 8;
  double edge_prob = 0.4;
};

/// Nodes V0..V(n-1) placed in a random topological order, each forward pair
/// joined with probability edge_prob. Exposure and outcome are a random
/// ordered pair; an exposure -> outcome edge is added when no directed path
/// joins them.
Dag random_dag(Rng& rng, const RandomDagConfig& config);

struct RandomCptConfig {
  /// Non-exposure nodes get between 2 and max_states states; the exposure
  /// is always binary.
  std::size_t max_states = 2;
  /// Entries are positive rationals with this common denominator bound.
  std::uint64_t max_denominator = 64;
};

/// Strictly positive CPTs with states "0", "1", ... on every node.
DiscreteModel random_model(Rng& rng, const Dag& dag, const RandomCptConfig& config = {});

}  // namespace confound
