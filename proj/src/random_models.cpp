#include "confound/random_models.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "confound/error.hpp"

namespace confound {

std::uint64_t Rng::below(std::uint64_t n) {
  // rejection keeps the result exactly uniform
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return x % n;
}

Dag random_dag(Rng& rng, const RandomDagConfig& config) {
  if (config.min_nodes < 2 || config.max_nodes < config.min_nodes || config.max_nodes > kMaxNodes)
    throw Error(ErrorKind::InvalidConfig, "node count range must satisfy 2 <= min <= max <= 64");
  if (!(config.edge_prob >= 0.0 && config.edge_prob <= 1.0))
    throw Error(ErrorKind::InvalidConfig, "edge probability must lie in [0, 1]");

  const std::size_t n = rng.between(config.min_nodes, config.max_nodes);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("V" + std::to_string(i));

  std::vector<NodeIndex> order(n);
  std::iota(order.begin(), order.end(), NodeIndex{0});
  for (std::size_t i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.coin(config.edge_prob)) edges.emplace_back(order[i], order[j]);

  const std::size_t i = rng.below(n - 1);
  const std::size_t j = rng.between(i + 1, n - 1);
  const NodeIndex a = order[i], y = order[j];
  Digraph g(names, edges);
  if (!g.descendants(a).contains(y)) {
    edges.emplace_back(a, y);
    g = Digraph(names, edges);
  }
  return Dag(std::move(g), a, y);
}

namespace {

// Positive integers summing to `total`, `parts` of them, uniformly over
// compositions.
std::vector<std::uint64_t> composition(Rng& rng, std::uint64_t total, std::size_t parts) {
  std::vector<std::uint64_t> cuts;
  while (cuts.size() + 1 < parts) {
    const std::uint64_t c = rng.between(1, total - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::uint64_t> out;
  std::uint64_t prev = 0;
  for (std::uint64_t c : cuts) {
    out.push_back(c - prev);
    prev = c;
  }
  out.push_back(total - prev);
  return out;
}

}  // namespace

DiscreteModel random_model(Rng& rng, const Dag& dag, const RandomCptConfig& config) {
  if (config.max_states < 2) throw Error(ErrorKind::InvalidConfig, "nodes need at least two states");
  if (config.max_denominator < config.max_states)
    throw Error(ErrorKind::InvalidConfig, "denominator bound too small for strictly positive rows");

  std::vector<std::vector<std::string>> states(dag.size());
  for (NodeIndex v = 0; v < dag.size(); ++v) {
    const std::size_t k = v == dag.exposure() ? 2 : rng.between(2, config.max_states);
    for (std::size_t s = 0; s < k; ++s) states[v].push_back(std::to_string(s));
  }

  std::vector<Cpt> cpts;
  for (NodeIndex v = 0; v < dag.size(); ++v) {
    Cpt cpt;
    cpt.node = v;
    cpt.parent_order = dag.parents(v).to_vector();
    std::size_t rows = 1;
    for (NodeIndex p : cpt.parent_order) rows *= states[p].size();
    const std::size_t k = states[v].size();
    for (std::size_t r = 0; r < rows; ++r) {
      const std::uint64_t q = rng.between(k, config.max_denominator);
      std::vector<Rational> row;
      for (std::uint64_t part : composition(rng, q, k)) {
        Rational x(static_cast<unsigned long>(part), static_cast<unsigned long>(q));
        x.canonicalize();
        row.push_back(x);
      }
      cpt.rows.push_back(std::move(row));
    }
    cpts.push_back(std::move(cpt));
  }
  return DiscreteModel(dag, std::move(states), std::move(cpts));
}

}  // namespace confound
