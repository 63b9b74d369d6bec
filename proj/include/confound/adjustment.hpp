#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "confound/graph.hpp"

namespace confound {

/// Subset enumeration over covariates refuses pools larger than this.
inline constexpr std::size_t kMaxEnumeratedCovariates = 24;

struct AdjustmentVerdict {
  NodeSet set;
  bool sufficient = false;
  bool minimal = false;
  /// Present iff not sufficient: a backdoor path open given `set`.
  std::optional<Path> open_backdoor_witness;
};

struct MinimalSetCatalog {
  /// By increasing size, then lexicographic by member names.
  std::vector<NodeSet> sets;
  NodeSet set_union;
};

/// Simple exposure-outcome paths whose first edge points into the exposure.
std::vector<Path> backdoor_paths(const Dag& dag);

/// Backdoor blocking test without witness construction. `s` must avoid the
/// exposure's descendants; no other validation is done.
bool blocks_all_backdoor_paths(const Dag& dag, NodeSet s);

/// Repeated backdoor blocking tests against one diagram.
class BackdoorTester {
 public:
  explicit BackdoorTester(const Dag& dag);
  bool blocks(NodeSet s) const;

 private:
  Digraph cut_;
  NodeSet exposure_, outcome_;
};

/// Throws NonCovariateInSet unless `s` is within the covariate pool.
AdjustmentVerdict is_sufficient(const Dag& dag, NodeSet s);

/// Throws SizeLimit when the covariate pool exceeds kMaxEnumeratedCovariates.
MinimalSetCatalog minimal_sufficient_sets(const Dag& dag);

AdjustmentVerdict union_of_minimal(const Dag& dag);

/// Throws SizeLimit when the pool is too large to enumerate.
void require_enumerable(const Dag& dag);

}  // namespace confound
