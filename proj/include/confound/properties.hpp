#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confound/definitions.hpp"

namespace confound {

/// P1   adjusting for every confounder removes confounding
/// P2A  each confounder completes some sufficient set: X + C sufficient, X not
/// P2B  each confounder strictly lowers |bias| alongside some X
enum class PropertyId { P1, P2A, P2B };

std::string_view to_string(PropertyId p);

struct PropertyWitness {
  std::optional<NodeIndex> variable;
  /// P1: the set of all confounders. P2A/P2B: the X that satisfies the
  /// property (when it holds).
  std::optional<NodeSet> set;
  /// P1 failing on the diagram: a backdoor path left open.
  std::optional<Path> open_path;
  /// P2B: |bias(X + C)| and |bias(X)| at the X found, or, on failure, at the
  /// empty X.
  std::optional<Rational> abs_bias_with;
  std::optional<Rational> abs_bias_without;
};

struct PropertyVerdict {
  PropertyId property = PropertyId::P1;
  DefinitionId definition = DefinitionId::D1;
  bool holds = false;
  /// Holds only because nothing qualifies (no confounder, or the variable is
  /// not one).
  bool vacuous = false;
  PropertyWitness witness;
  std::string detail;
};

/// Pool covariates positive under `def`. Throws MissingModel for D5/D6
/// without a model.
NodeSet confounders_under(const Dag& dag, const DiscreteModel* model, DefinitionId def);

/// S = confounders_under(def); holds iff S blocks every backdoor path and,
/// with a model, Y_a is independent of A given S in distribution.
PropertyVerdict check_property1(const Dag& dag, const DiscreteModel* model, DefinitionId def);

/// Per-variable: exists X in the pool without C with X + C sufficient and X
/// not sufficient. Vacuously true when C is not positive under `def`.
PropertyVerdict check_property2a(const Dag& dag, const DiscreteModel* model, DefinitionId def, NodeIndex c);
/// Per-variable: exists X with |bias(X + C)| < |bias(X)|. Vacuously true
/// when C is not positive under `def`.
PropertyVerdict check_property2b(const DiscreteModel& model, DefinitionId def, NodeIndex c);

/// The definition satisfies the property on this input iff every one of its
/// confounders does; the witness names the first (by name) that does not.
PropertyVerdict check_property2a(const Dag& dag, const DiscreteModel* model, DefinitionId def);
PropertyVerdict check_property2b(const DiscreteModel& model, DefinitionId def);

/// Whether X + C sufficient with X insufficient for some X, without regard
/// to any definition.
std::optional<NodeSet> completes_sufficient_set(const Dag& dag, NodeIndex c);

}  // namespace confound
