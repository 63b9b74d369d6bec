#include "confound/adjustment.hpp"

#include <string>

#include "confound/error.hpp"

namespace confound {

std::vector<Path> backdoor_paths(const Dag& dag) {
  std::vector<Path> out;
  for (Path& p : enumerate_paths(dag, dag.exposure(), dag.outcome()))
    if (p.starts_into_source()) out.push_back(std::move(p));
  return out;
}

// With the exposure's outgoing edges cut, the remaining exposure-outcome
// paths are exactly the backdoor paths. Collider descendants are the same in
// both graphs because the conditioning set holds no descendant of the
// exposure.
BackdoorTester::BackdoorTester(const Dag& dag)
    : cut_(remove_out_of(dag, dag.exposure())), exposure_{dag.exposure()}, outcome_{dag.outcome()} {}

bool BackdoorTester::blocks(NodeSet s) const { return d_separated(cut_, exposure_, outcome_, s); }

bool blocks_all_backdoor_paths(const Dag& dag, NodeSet s) { return BackdoorTester(dag).blocks(s); }

void require_enumerable(const Dag& dag) {
  if (dag.covariate_pool().size() > kMaxEnumeratedCovariates)
    throw Error(ErrorKind::SizeLimit, "covariate pool has " + std::to_string(dag.covariate_pool().size()) +
                                          " members; subset enumeration is limited to " +
                                          std::to_string(kMaxEnumeratedCovariates));
}

AdjustmentVerdict is_sufficient(const Dag& dag, NodeSet s) {
  if (!s.is_subset_of(dag.covariate_pool()))
    throw Error(ErrorKind::NonCovariateInSet,
                dag.format_set(s - dag.covariate_pool()) + " not in the covariate pool");
  const BackdoorTester tester(dag);
  AdjustmentVerdict v;
  v.set = s;
  v.sufficient = tester.blocks(s);
  if (!v.sufficient) {
    for (Path& p : backdoor_paths(dag)) {
      if (!is_blocked(dag, p, s)) {
        v.open_backdoor_witness = std::move(p);
        break;
      }
    }
    return v;
  }
  if (s.size() > kMaxEnumeratedCovariates)
    throw Error(ErrorKind::SizeLimit, "set too large for the minimality check");
  const std::vector<NodeIndex> members = dag.sorted_by_name(s);
  bool smaller_found = false;
  for_each_subset_by_size(
      members,
      [&](NodeSet t) {
        if (t == s) return false;
        if (tester.blocks(t)) {
          smaller_found = true;
          return false;
        }
        return true;
      });
  v.minimal = !smaller_found;
  return v;
}

MinimalSetCatalog minimal_sufficient_sets(const Dag& dag) {
  require_enumerable(dag);
  const BackdoorTester tester(dag);
  MinimalSetCatalog cat;
  const std::vector<NodeIndex> pool = dag.sorted_by_name(dag.covariate_pool());
  for_each_subset_by_size(pool, [&](NodeSet s) {
    // a set holding an earlier (smaller) minimal set has a sufficient
    // proper subset, so it cannot be minimal
    for (NodeSet m : cat.sets)
      if (m.is_subset_of(s)) return true;
    if (tester.blocks(s)) {
      cat.sets.push_back(s);
      cat.set_union |= s;
    }
    return true;
  });
  return cat;
}

AdjustmentVerdict union_of_minimal(const Dag& dag) {
  return is_sufficient(dag, minimal_sufficient_sets(dag).set_union);
}

}  // namespace confound
