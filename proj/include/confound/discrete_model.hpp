#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "confound/graph.hpp"
#include "confound/rational.hpp"

namespace confound {

/// Dense table of exact probabilities over a few finite variables
/// ("slots"). Cells are laid out row-major with the last slot varying
/// fastest.
class ProbabilityTable {
 public:
  ProbabilityTable() = default;
  ProbabilityTable(std::vector<std::string> labels, std::vector<std::size_t> cardinalities);

  std::size_t arity() const { return cards_.size(); }
  std::size_t cells() const { return probs_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::size_t>& cardinalities() const { return cards_; }

  std::size_t cell_of(std::span<const std::size_t> states) const;
  void states_of(std::size_t cell, std::vector<std::size_t>& states) const;

  const Rational& operator[](std::size_t cell) const { return probs_[cell]; }
  Rational& operator[](std::size_t cell) { return probs_[cell]; }
  const std::vector<Rational>& probabilities() const { return probs_; }

  Rational total() const;

  /// Marginal over `keep` (slot positions), in the given order.
  ProbabilityTable marginal(std::span<const std::size_t> keep) const;

  /// Exact test of (slots a) independent of (slots b) given (slots z):
  /// P(a,b,z) P(z) == P(a,z) P(b,z) for every cell. Empty a or b is
  /// trivially independent.
  bool independent(std::span<const std::size_t> a, std::span<const std::size_t> b,
                   std::span<const std::size_t> z) const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::size_t> cards_;
  std::vector<std::size_t> strides_;
  std::vector<Rational> probs_;
};

/// Conditional probability table of one node. `rows` is indexed by the
/// parent configuration (row-major over `parent_order`, last parent fastest)
/// and each row is a distribution over the node's states.
struct Cpt {
  NodeIndex node = 0;
  std::vector<NodeIndex> parent_order;
  std::vector<std::vector<Rational>> rows;
};

/// Node -> state index. Partial assignments omit nodes.
using Assignment = std::map<NodeIndex, std::size_t>;

/// Joint tables above this many cells are refused with SizeLimit.
inline constexpr std::size_t kMaxJointCells = std::size_t{1} << 22;

/// A causal diagram with one CPT per node. The joint distribution is the
/// product of the CPTs and is computed once at construction.
class DiscreteModel {
 public:
  /// `states[i]` lists node i's state labels; `cpts` holds one entry per
  /// node in any order. Throws InvalidModel on any structural mismatch or a
  /// row that does not sum to exactly 1, SizeLimit for oversized joints.
  DiscreteModel(Dag dag, std::vector<std::vector<std::string>> states, std::vector<Cpt> cpts);

  const Dag& dag() const { return dag_; }
  std::size_t cardinality(NodeIndex node) const { return states_.at(node).size(); }
  const std::vector<std::string>& states(NodeIndex node) const { return states_.at(node); }
  /// Throws UnknownState.
  std::size_t state_index(NodeIndex node, std::string_view label) const;
  /// Numeric reading of a state label, if it parses as a rational.
  const std::optional<Rational>& numeric_value(NodeIndex node, std::size_t state) const {
    return values_.at(node).at(state);
  }
  const Cpt& cpt(NodeIndex node) const { return cpts_.at(node); }
  /// P(node = state | parents as in `full`), `full` holding every node's state.
  const Rational& cpt_entry(NodeIndex node, std::size_t state, std::span<const std::size_t> full) const;

  /// Slots are the nodes in index order.
  const ProbabilityTable& joint() const { return *joint_; }

  /// Name-based convenience: {{"A","1"},{"C","0"}}.
  Assignment assignment(std::initializer_list<std::pair<std::string_view, std::string_view>> items) const;

 private:
  Dag dag_;
  std::vector<std::vector<std::string>> states_;
  std::vector<std::vector<std::optional<Rational>>> values_;
  std::vector<Cpt> cpts_;
  std::shared_ptr<const ProbabilityTable> joint_;
};

/// Product of CPT entries. Throws IncompleteAssignment unless every node is
/// assigned.
Rational joint_probability(const DiscreteModel& model, const Assignment& full);

/// Marginal probability of a partial assignment.
Rational probability(const DiscreteModel& model, const Assignment& partial);

/// E(target | given). Throws ZeroProbabilityCondition, NonNumericState.
Rational cond_expectation(const DiscreteModel& model, NodeIndex target, const Assignment& given = {});

/// do(node = state): the node's CPT becomes a point mass and edges into it
/// are removed. Throws UnknownState.
DiscreteModel intervene(const DiscreteModel& model, NodeIndex node, std::size_t state);

/// State index of exposure value 0 or 1. Throws NonBinaryExposure unless
/// the exposure has exactly the two numeric states 0 and 1.
std::size_t exposure_state(const DiscreteModel& model, int value);

/// E(Y_value) = E(Y) under do(A = value).
Rational interventional_mean(const DiscreteModel& model, int value);

/// E(Y_1) - E(Y_0).
Rational ace(const DiscreteModel& model);

/// sum_x {E(Y|A=1,x) - E(Y|A=0,x)} P(x). Throws PositivityViolation naming
/// the first stratum x with P(x) > 0 but P(A=a, x) = 0 for some a, and
/// NotACovariate when `x` holds the exposure or outcome.
Rational standardized_rd(const DiscreteModel& model, NodeSet x);

/// standardized_rd(x) - ace, signed.
Rational bias(const DiscreteModel& model, NodeSet x);

/// Exact conditional independence in the joint. Throws OverlappingSets.
bool ci_test(const DiscreteModel& model, NodeSet a, NodeSet b, NodeSet z);

/// Joint law of (Y_a, A, W) with W the exposure's nondescendants other than
/// the outcome: P(w) P(a'|pa_A) P(y | do(a), w). Slot 0 is Y_a, slot 1 is A,
/// slots 2.. are `covariates` in index order.
struct CounterfactualJoint {
  int exposure_value = 0;
  ProbabilityTable table;
  std::vector<NodeIndex> covariates;

  /// Slot positions of the members of `s`. Throws NotACovariate for members
  /// outside `covariates`.
  std::vector<std::size_t> slots_of(NodeSet s) const;
};

CounterfactualJoint cf_joint(const DiscreteModel& model, int exposure_value);

/// Y_a independent of A given S for a = 0 and a = 1, exactly. Throws
/// NonCovariateInSet unless `s` is within the covariate pool.
bool cf_unconfounded(const DiscreteModel& model, NodeSet s);
/// Same test against precomputed joints for a = 0 and a = 1.
bool cf_unconfounded(const CounterfactualJoint& a0, const CounterfactualJoint& a1, NodeSet s);

/// Human-readable "C1=0,C2=1".
std::string format_assignment(const DiscreteModel& model, const Assignment& a);

}  // namespace confound
