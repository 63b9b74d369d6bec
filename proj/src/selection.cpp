#include "confound/selection.hpp"

#include <string>

#include "confound/error.hpp"

namespace confound {

std::string_view to_string(OracleKind k) { return k == OracleKind::Graphical ? "graphical" : "numeric"; }

std::string_view to_string(SelectionMode m) { return m == SelectionMode::Backward ? "backward" : "forward"; }

bool IndependenceOracle::independent(NodeSet a, NodeSet b, NodeSet z) const {
  if (model_) return ci_test(*model_, a, b, z);
  return d_separated(*dag_, a, b, z);
}

bool IndependenceOracle::unfaithful(NodeSet a, NodeSet b, NodeSet z) const {
  if (!model_) return false;
  return ci_test(*model_, a, b, z) && !d_separated(*dag_, a, b, z);
}

namespace {

void require_pool(const Dag& dag, NodeSet s) {
  if (!s.is_subset_of(dag.covariate_pool()))
    throw Error(ErrorKind::NonCovariateInSet, dag.format_set(s - dag.covariate_pool()) + " not in the covariate pool");
}

SelectionStep ask(const IndependenceOracle& oracle, NodeIndex v, NodeSet given) {
  const Dag& dag = oracle.dag();
  SelectionStep step;
  step.variable = v;
  step.query.a = NodeSet{dag.outcome()};
  step.query.b = NodeSet{v};
  step.query.z = given.with(dag.exposure());
  step.query.independent = oracle.independent(step.query.a, step.query.b, step.query.z);
  step.faithfulness_caveat =
      step.query.independent && oracle.unfaithful(step.query.a, step.query.b, step.query.z);
  return step;
}

}  // namespace

SelectionTrace backward_select(const IndependenceOracle& oracle, NodeSet s) {
  const Dag& dag = oracle.dag();
  require_pool(dag, s);
  SelectionTrace t;
  t.mode = SelectionMode::Backward;
  t.initial = s;
  NodeSet current = s;
  bool dropped = true;
  while (dropped) {
    dropped = false;
    for (NodeIndex v : dag.sorted_by_name(current)) {
      SelectionStep step = ask(oracle, v, current.without(v));
      t.faithfulness_caveat |= step.faithfulness_caveat;
      step.applied = step.query.independent;
      t.steps.push_back(step);
      if (step.applied) {
        current.erase(v);
        dropped = true;
        break;
      }
    }
  }
  t.final_set = current;
  return t;
}

SelectionTrace forward_select(const IndependenceOracle& oracle, NodeSet s) {
  const Dag& dag = oracle.dag();
  require_pool(dag, s);
  SelectionTrace t;
  t.mode = SelectionMode::Forward;
  t.initial = s;
  NodeSet current;
  bool added = true;
  while (added) {
    added = false;
    for (NodeIndex v : dag.sorted_by_name(s - current)) {
      SelectionStep step = ask(oracle, v, current);
      t.faithfulness_caveat |= step.faithfulness_caveat;
      step.applied = !step.query.independent;
      t.steps.push_back(step);
      if (step.applied) {
        current.insert(v);
        added = true;
        break;
      }
    }
  }
  t.final_set = current;
  return t;
}

NodeSet replay(const IndependenceOracle& oracle, const SelectionTrace& trace) {
  NodeSet current = trace.mode == SelectionMode::Backward ? trace.initial : NodeSet{};
  for (const SelectionStep& step : trace.steps) {
    const IndependenceQuery& q = step.query;
    if (oracle.independent(q.a, q.b, q.z) != q.independent)
      throw Error(ErrorKind::InvalidConfig, "oracle disagrees with the recorded query on " +
                                                oracle.dag().name(step.variable));
    if (!step.applied) continue;
    if (trace.mode == SelectionMode::Backward)
      current.erase(step.variable);
    else
      current.insert(step.variable);
  }
  return current;
}

RobinsResult robins_reduction(const IndependenceOracle& oracle, NodeSet s1, NodeSet s2) {
  const Dag& dag = oracle.dag();
  if (s1.intersects(s2)) throw Error(ErrorKind::OverlappingSets, "S1 and S2 must be disjoint");
  require_pool(dag, s1 | s2);
  if (s2.size() > kMaxRobinsSet)
    throw Error(ErrorKind::SizeLimit, "S2 has " + std::to_string(s2.size()) + " members; at most " +
                                          std::to_string(kMaxRobinsSet) + " are partitioned");
  const std::vector<NodeIndex> members = dag.sorted_by_name(s2);
  const NodeSet a{dag.exposure()}, y{dag.outcome()};
  RobinsResult r;
  const std::uint64_t count = std::uint64_t{1} << members.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    NodeSet t1;
    for (std::size_t i = 0; i < members.size(); ++i)
      if ((mask >> i) & 1U) t1.insert(members[i]);
    const NodeSet t2 = s2 - t1;
    ++r.partitions_tried;
    if (oracle.independent(a, t1, s1) && oracle.independent(y, t2, s1 | t1 | a)) {
      r.holds = true;
      r.partition = std::make_pair(t1, t2);
      break;
    }
  }
  return r;
}

}  // namespace confound
