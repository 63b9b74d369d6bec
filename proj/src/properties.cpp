#include "confound/properties.hpp"

#include "confound/error.hpp"

namespace confound {

namespace {

Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

void require_model(const DiscreteModel* model, DefinitionId def) {
  if (needs_model(def) && !model)
    throw Error(ErrorKind::MissingModel, std::string(to_string(def)) + " needs a discrete model");
}

}  // namespace

std::string_view to_string(PropertyId p) {
  switch (p) {
    case PropertyId::P1: return "P1";
    case PropertyId::P2A: return "P2A";
    case PropertyId::P2B: return "P2B";
  }
  return "P?";
}

NodeSet confounders_under(const Dag& dag, const DiscreteModel* model, DefinitionId def) {
  require_model(model, def);
  NodeSet out;
  const NodeSet pool = dag.covariate_pool();
  switch (def) {
    case DefinitionId::D1:
      for (NodeIndex c : pool)
        if (classify_d1_graphical(dag, c).holds) out.insert(c);
      break;
    case DefinitionId::D2:
      for (NodeIndex c : pool)
        if (classify_d2(dag, c).holds) out.insert(c);
      break;
    case DefinitionId::D3:
    case DefinitionId::D4: {
      const MinimalSetCatalog cat = minimal_sufficient_sets(dag);
      for (NodeIndex c : pool)
        if (def == DefinitionId::D3 ? classify_d3(cat, c) : classify_d4(cat, c).holds) out.insert(c);
      break;
    }
    case DefinitionId::D5:
    case DefinitionId::D6: {
      const EffectEvaluator effects(*model);
      for (NodeIndex c : pool)
        if (def == DefinitionId::D5 ? classify_d5(effects, c).holds : classify_d6(effects, c).holds) out.insert(c);
      break;
    }
  }
  return out;
}

PropertyVerdict check_property1(const Dag& dag, const DiscreteModel* model, DefinitionId def) {
  PropertyVerdict v;
  v.property = PropertyId::P1;
  v.definition = def;
  const NodeSet s = confounders_under(dag, model, def);
  v.witness.set = s;
  AdjustmentVerdict suff = is_sufficient(dag, s);
  if (!suff.sufficient) {
    v.witness.open_path = std::move(suff.open_backdoor_witness);
    v.detail = "adjusting for " + dag.format_set(s) + " leaves backdoor path " + format_path(dag, *v.witness.open_path) +
               " open";
    return v;
  }
  if (model && !cf_unconfounded(*model, s)) {
    v.detail = "potential outcome depends on exposure given " + dag.format_set(s);
    return v;
  }
  v.holds = true;
  v.detail = "adjusting for " + dag.format_set(s) + " removes confounding";
  return v;
}

std::optional<NodeSet> completes_sufficient_set(const Dag& dag, NodeIndex c) {
  require_enumerable(dag);
  const BackdoorTester tester(dag);
  const std::vector<NodeIndex> others = dag.sorted_by_name(dag.covariate_pool().without(c));
  std::optional<NodeSet> found;
  for_each_subset_by_size(others, [&](NodeSet x) {
    if (tester.blocks(x.with(c)) && !tester.blocks(x)) {
      found = x;
      return false;
    }
    return true;
  });
  return found;
}

namespace {

bool positive_under(const Dag& dag, const DiscreteModel* model, DefinitionId def, NodeIndex c) {
  if (!dag.covariate_pool().contains(c))
    throw Error(ErrorKind::NotACovariate, "'" + dag.name(c) + "' is not in the covariate pool");
  return confounders_under(dag, model, def).contains(c);
}

PropertyVerdict vacuous(PropertyId p, DefinitionId def, const Dag& dag, NodeIndex c) {
  PropertyVerdict v;
  v.property = p;
  v.definition = def;
  v.holds = true;
  v.vacuous = true;
  v.witness.variable = c;
  v.detail = dag.name(c) + " is not a confounder under " + std::string(to_string(def));
  return v;
}

PropertyVerdict property2a_for(const Dag& dag, DefinitionId def, NodeIndex c) {
  PropertyVerdict v;
  v.property = PropertyId::P2A;
  v.definition = def;
  v.witness.variable = c;
  v.witness.set = completes_sufficient_set(dag, c);
  v.holds = v.witness.set.has_value();
  if (v.holds)
    v.detail = dag.name(c) + " with " + dag.format_set(*v.witness.set) + " is sufficient, " +
               dag.format_set(*v.witness.set) + " alone is not";
  else
    v.detail = "no X makes X+" + dag.name(c) + " sufficient while X alone is insufficient";
  return v;
}

PropertyVerdict property2b_for(const EffectEvaluator& effects, DefinitionId def, NodeIndex c) {
  const Dag& dag = effects.model().dag();
  PropertyVerdict v;
  v.property = PropertyId::P2B;
  v.definition = def;
  v.witness.variable = c;
  const BiasVerdict b = classify_d5(effects, c);
  v.holds = b.holds;
  if (b.holds) {
    v.witness.set = b.witness;
    v.witness.abs_bias_with = b.abs_bias->first;
    v.witness.abs_bias_without = b.abs_bias->second;
    v.detail = "adding " + dag.name(c) + " to " + dag.format_set(*b.witness) + " lowers |bias| from " +
               to_exact_string(b.abs_bias->second) + " to " + to_exact_string(b.abs_bias->first);
  } else {
    v.witness.abs_bias_with = abs_value(effects.bias(NodeSet{c}));
    v.witness.abs_bias_without = abs_value(effects.bias(NodeSet{}));
    v.detail = "no X where adding " + dag.name(c) + " lowers |bias|";
  }
  return v;
}

}  // namespace

PropertyVerdict check_property2a(const Dag& dag, const DiscreteModel* model, DefinitionId def, NodeIndex c) {
  if (!positive_under(dag, model, def, c)) return vacuous(PropertyId::P2A, def, dag, c);
  return property2a_for(dag, def, c);
}

PropertyVerdict check_property2b(const DiscreteModel& model, DefinitionId def, NodeIndex c) {
  if (!positive_under(model.dag(), &model, def, c)) return vacuous(PropertyId::P2B, def, model.dag(), c);
  return property2b_for(EffectEvaluator(model), def, c);
}

PropertyVerdict check_property2a(const Dag& dag, const DiscreteModel* model, DefinitionId def) {
  const NodeSet positives = confounders_under(dag, model, def);
  PropertyVerdict v;
  v.property = PropertyId::P2A;
  v.definition = def;
  v.holds = true;
  v.vacuous = positives.empty();
  v.detail = v.vacuous ? "no confounders under " + std::string(to_string(def)) : "every confounder qualifies";
  for (NodeIndex c : dag.sorted_by_name(positives)) {
    PropertyVerdict one = property2a_for(dag, def, c);
    if (!one.holds) return one;
  }
  return v;
}

PropertyVerdict check_property2b(const DiscreteModel& model, DefinitionId def) {
  const Dag& dag = model.dag();
  const NodeSet positives = confounders_under(dag, &model, def);
  PropertyVerdict v;
  v.property = PropertyId::P2B;
  v.definition = def;
  v.holds = true;
  v.vacuous = positives.empty();
  v.detail = v.vacuous ? "no confounders under " + std::string(to_string(def)) : "every confounder qualifies";
  const EffectEvaluator effects(model);
  for (NodeIndex c : dag.sorted_by_name(positives)) {
    PropertyVerdict one = property2b_for(effects, def, c);
    if (!one.holds) return one;
  }
  return v;
}

}  // namespace confound
