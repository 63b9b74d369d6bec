#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "confound/adjustment.hpp"
#include "confound/discrete_model.hpp"
#include "confound/graph.hpp"

namespace confound {

/// The six candidate confounder definitions.
///   D1  associated with exposure given some X and with outcome given (A, X)
///   D2  a non-collider on some backdoor path
///   D3  member of every minimally sufficient set
///   D4  member of some minimally sufficient set
///   D5  adjusting for it along with some X strictly lowers |bias|
///   D6  adjusting for it along with some X changes the standardized RD
/// D1-D4 need only the diagram (D1 reads association as d-connection);
/// D5 and D6 need a DiscreteModel.
enum class DefinitionId { D1 = 1, D2, D3, D4, D5, D6 };

inline constexpr std::array<DefinitionId, 6> kAllDefinitions{DefinitionId::D1, DefinitionId::D2, DefinitionId::D3,
                                                              DefinitionId::D4, DefinitionId::D5, DefinitionId::D6};

std::string_view to_string(DefinitionId d);
/// "D4" or "4". Throws InvalidConfig.
DefinitionId parse_definition(std::string_view text);
constexpr bool needs_model(DefinitionId d) { return d == DefinitionId::D5 || d == DefinitionId::D6; }

struct SetVerdict {
  bool holds = false;
  std::optional<NodeSet> witness;
};

struct PathVerdict {
  bool holds = false;
  std::optional<Path> witness;
};

struct BiasVerdict {
  bool holds = false;
  std::optional<NodeSet> witness;
  /// |bias(X + C)| and |bias(X)| at the witness X.
  std::optional<std::pair<Rational, Rational>> abs_bias;
};

/// Memoized standardized risk differences on one model, keyed by covariate
/// set.
class EffectEvaluator {
 public:
  explicit EffectEvaluator(const DiscreteModel& model);

  const DiscreteModel& model() const { return *model_; }
  const Rational& ace() const { return ace_; }
  const Rational& standardized_rd(NodeSet x) const;
  Rational bias(NodeSet x) const { return standardized_rd(x) - ace_; }

 private:
  const DiscreteModel* model_;
  Rational ace_;
  mutable std::unordered_map<std::uint64_t, Rational> cache_;
};

// Every classifier throws NotACovariate when the variable is outside the
// diagram's covariate pool. Witness sets X range over subsets of the pool
// without the variable, smallest first, then lexicographic by names.

SetVerdict classify_d1_graphical(const Dag& dag, NodeIndex c);
SetVerdict classify_d1_numeric(const DiscreteModel& model, NodeIndex c);
PathVerdict classify_d2(const Dag& dag, NodeIndex c);

/// False when the catalog is {{}}: then nobody is in every minimal set.
bool classify_d3(const Dag& dag, NodeIndex c);
bool classify_d3(const MinimalSetCatalog& catalog, NodeIndex c);
SetVerdict classify_d4(const Dag& dag, NodeIndex c);
SetVerdict classify_d4(const MinimalSetCatalog& catalog, NodeIndex c);

BiasVerdict classify_d5(const DiscreteModel& model, NodeIndex c);
BiasVerdict classify_d5(const EffectEvaluator& effects, NodeIndex c);
SetVerdict classify_d6(const DiscreteModel& model, NodeIndex c);
SetVerdict classify_d6(const EffectEvaluator& effects, NodeIndex c);

/// D5 and not D4.
bool surrogate_confounder(const DiscreteModel& model, NodeIndex c);

/// C is a confounder given L when some X makes (X, L, C) sufficient while no
/// proper subset T of (X, C) makes (T, L) sufficient. Throws NotACovariate
/// when C or L leave the pool or C is in L.
SetVerdict conditional_confounder(const Dag& dag, NodeIndex c, NodeSet l);

struct Implication {
  DefinitionId antecedent;
  DefinitionId consequent;
  bool operator==(const Implication&) const = default;
};

std::string to_string(const Implication& i);

/// Implications that hold on every causal diagram.
inline constexpr std::array<Implication, 5> kGraphImplications{{
    {DefinitionId::D3, DefinitionId::D4},
    {DefinitionId::D4, DefinitionId::D2},
    {DefinitionId::D4, DefinitionId::D1},
    {DefinitionId::D3, DefinitionId::D2},
    {DefinitionId::D3, DefinitionId::D1},
}};
inline constexpr std::array<Implication, 3> kModelImplications{{
    {DefinitionId::D5, DefinitionId::D6},
    {DefinitionId::D6, DefinitionId::D1},
    {DefinitionId::D5, DefinitionId::D1},
}};
/// Implications that usually hold but can fail through cancellation or
/// unfaithfulness; observed, never enforced.
inline constexpr std::array<Implication, 7> kTypicalImplications{{
    {DefinitionId::D1, DefinitionId::D6},
    {DefinitionId::D2, DefinitionId::D1},
    {DefinitionId::D2, DefinitionId::D6},
    {DefinitionId::D3, DefinitionId::D5},
    {DefinitionId::D3, DefinitionId::D6},
    {DefinitionId::D4, DefinitionId::D5},
    {DefinitionId::D4, DefinitionId::D6},
}};

using Witness = std::variant<NodeSet, Path>;

struct ConfounderReport {
  NodeIndex variable = 0;
  /// D1 here is the graphical reading.
  std::map<DefinitionId, bool> verdicts;
  std::map<DefinitionId, Witness> witnesses;
  /// Distributional D1, present with a model.
  std::optional<bool> d1_numeric;
  std::optional<NodeSet> d1_numeric_witness;
  /// |bias(X + C)|, |bias(X)| at the D5 witness.
  std::optional<std::pair<Rational, Rational>> d5_abs_bias;
  /// D5 and not D4; present with a model.
  std::optional<bool> surrogate;
  bool lattice_ok = true;
  std::vector<Implication> violations;
  std::vector<Implication> typical_failures;
};

struct ImplicationCheck {
  bool ok = true;
  std::vector<Implication> violated;
  /// Failed typical (dashed) implications, for information.
  std::vector<Implication> typical_failures;
};

/// Checks the diagram-level implications, plus the model-level ones when
/// `has_model`. On model-level arrows into D1 the distributional D1 is
/// consulted when present. Throws IncompleteReport when a needed verdict is
/// missing.
ImplicationCheck check_implications(const ConfounderReport& report, bool has_model);

/// Classifies `c` under every definition the inputs allow.
ConfounderReport classify(const Dag& dag, const DiscreteModel* model, NodeIndex c);

/// One report per pool covariate in name order, sharing the catalog and the
/// effect cache.
std::vector<ConfounderReport> classify_all(const Dag& dag, const DiscreteModel* model);

}  // namespace confound
