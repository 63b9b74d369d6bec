#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "confound/discrete_model.hpp"
#include "confound/graph.hpp"

namespace confound {

enum class OracleKind { Graphical, Numeric };

std::string_view to_string(OracleKind k);

/// Answers (a independent of b given z) from d-separation in a diagram or
/// from exact conditional independence in a model's joint.
class IndependenceOracle {
 public:
  static IndependenceOracle graphical(const Dag& dag) { return IndependenceOracle(&dag, nullptr); }
  static IndependenceOracle numeric(const DiscreteModel& model) { return IndependenceOracle(&model.dag(), &model); }

  OracleKind kind() const { return model_ ? OracleKind::Numeric : OracleKind::Graphical; }
  const Dag& dag() const { return *dag_; }

  bool independent(NodeSet a, NodeSet b, NodeSet z) const;
  /// Numeric oracle only: the distribution says independent while the
  /// diagram d-connects.
  bool unfaithful(NodeSet a, NodeSet b, NodeSet z) const;

 private:
  IndependenceOracle(const Dag* dag, const DiscreteModel* model) : dag_(dag), model_(model) {}

  const Dag* dag_;
  const DiscreteModel* model_;
};

struct IndependenceQuery {
  NodeSet a, b, z;
  bool independent = false;
  bool operator==(const IndependenceQuery&) const = default;
};

enum class SelectionMode { Backward, Forward };

std::string_view to_string(SelectionMode m);

struct SelectionStep {
  NodeIndex variable = 0;
  /// Y against {variable} given A and the current set (minus the variable
  /// for backward steps).
  IndependenceQuery query;
  /// The variable was dropped (backward) or added (forward).
  bool applied = false;
  bool faithfulness_caveat = false;
  bool operator==(const SelectionStep&) const = default;
};

struct SelectionTrace {
  SelectionMode mode = SelectionMode::Backward;
  NodeSet initial;
  std::vector<SelectionStep> steps;
  NodeSet final_set;
  /// Some query came back independent although the diagram d-connects.
  bool faithfulness_caveat = false;
  bool operator==(const SelectionTrace&) const = default;
};

/// Repeatedly drops the first V (by name) with Y independent of V given A
/// and the rest of the current set.
SelectionTrace backward_select(const IndependenceOracle& oracle, NodeSet s);

/// From the empty set, repeatedly adds the first V (by name) of `s` not yet
/// chosen with Y dependent on V given A and the current set.
SelectionTrace forward_select(const IndependenceOracle& oracle, NodeSet s);

/// Re-issues every recorded query and applies the recorded moves. Throws
/// InvalidConfig if the oracle disagrees with the trace.
NodeSet replay(const IndependenceOracle& oracle, const SelectionTrace& trace);

/// Partitions of S2 are enumerated by T1 membership mask over S2's members
/// in name order (bit i = i-th member), starting at 0.
inline constexpr std::size_t kMaxRobinsSet = 16;

struct RobinsResult {
  bool holds = false;
  /// (T1, T2) of the first qualifying partition.
  std::optional<std::pair<NodeSet, NodeSet>> partition;
  std::size_t partitions_tried = 0;
};

/// Whether S2 splits into T1, T2 with A independent of T1 given S1 and Y
/// independent of T2 given (A, S1, T1). Throws SizeLimit when |S2| >
/// kMaxRobinsSet, OverlappingSets when S1 and S2 meet, NonCovariateInSet when
/// either leaves the covariate pool.
RobinsResult robins_reduction(const IndependenceOracle& oracle, NodeSet s1, NodeSet s2);

}  // namespace confound
