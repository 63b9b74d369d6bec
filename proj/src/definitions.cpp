#include "confound/definitions.hpp"

#include <algorithm>
#include <cstdlib>

#include "confound/error.hpp"

namespace confound {

namespace {

void require_covariate(const Dag& dag, NodeIndex c) {
  if (c >= dag.size() || !dag.covariate_pool().contains(c))
    throw Error(ErrorKind::NotACovariate,
                (c < dag.size() ? "'" + dag.name(c) + "'" : std::string("node")) + " is not in the covariate pool");
}

// Witness candidates: subsets of the pool without `c`, smallest first.
template <typename Test>
std::optional<NodeSet> first_witness(const Dag& dag, NodeIndex c, Test&& test) {
  require_enumerable(dag);
  const std::vector<NodeIndex> others = dag.sorted_by_name(dag.covariate_pool().without(c));
  std::optional<NodeSet> found;
  for_each_subset_by_size(others, [&](NodeSet x) {
    if (!test(x)) return true;
    found = x;
    return false;
  });
  return found;
}

SetVerdict set_verdict(std::optional<NodeSet> w) {
  SetVerdict v;
  v.holds = w.has_value();
  v.witness = w;
  return v;
}

Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace

std::string_view to_string(DefinitionId d) {
  switch (d) {
    case DefinitionId::D1: return "D1";
    case DefinitionId::D2: return "D2";
    case DefinitionId::D3: return "D3";
    case DefinitionId::D4: return "D4";
    case DefinitionId::D5: return "D5";
    case DefinitionId::D6: return "D6";
  }
  return "D?";
}

DefinitionId parse_definition(std::string_view text) {
  std::string_view t = text;
  if (!t.empty() && (t.front() == 'D' || t.front() == 'd')) t.remove_prefix(1);
  if (t.size() == 1 && t[0] >= '1' && t[0] <= '6') return static_cast<DefinitionId>(t[0] - '0');
  throw Error(ErrorKind::InvalidConfig, "unknown definition '" + std::string(text) + "' (expected D1..D6)");
}

std::string to_string(const Implication& i) {
  return std::string(to_string(i.antecedent)) + "=>" + std::string(to_string(i.consequent));
}

EffectEvaluator::EffectEvaluator(const DiscreteModel& model) : model_(&model), ace_(confound::ace(model)) {}

const Rational& EffectEvaluator::standardized_rd(NodeSet x) const {
  auto it = cache_.find(x.bits());
  if (it == cache_.end()) it = cache_.emplace(x.bits(), confound::standardized_rd(*model_, x)).first;
  return it->second;
}

SetVerdict classify_d1_graphical(const Dag& dag, NodeIndex c) {
  require_covariate(dag, c);
  const NodeSet cs{c}, as{dag.exposure()}, ys{dag.outcome()};
  return set_verdict(first_witness(dag, c, [&](NodeSet x) {
    return !d_separated(dag, cs, as, x) && !d_separated(dag, cs, ys, x.with(dag.exposure()));
  }));
}

SetVerdict classify_d1_numeric(const DiscreteModel& model, NodeIndex c) {
  const Dag& dag = model.dag();
  require_covariate(dag, c);
  const NodeSet cs{c}, as{dag.exposure()}, ys{dag.outcome()};
  return set_verdict(first_witness(dag, c, [&](NodeSet x) {
    return !ci_test(model, cs, as, x) && !ci_test(model, cs, ys, x.with(dag.exposure()));
  }));
}

PathVerdict classify_d2(const Dag& dag, NodeIndex c) {
  require_covariate(dag, c);
  PathVerdict v;
  for (Path& p : backdoor_paths(dag)) {
    for (std::size_t i = 1; i + 1 < p.nodes.size(); ++i) {
      if (p.nodes[i] == c && !p.is_collider(i)) {
        v.holds = true;
        v.witness = std::move(p);
        return v;
      }
    }
  }
  return v;
}

bool classify_d3(const MinimalSetCatalog& catalog, NodeIndex c) {
  if (catalog.sets.empty()) return false;
  return std::all_of(catalog.sets.begin(), catalog.sets.end(), [&](NodeSet s) { return s.contains(c); });
}

bool classify_d3(const Dag& dag, NodeIndex c) {
  require_covariate(dag, c);
  return classify_d3(minimal_sufficient_sets(dag), c);
}

SetVerdict classify_d4(const MinimalSetCatalog& catalog, NodeIndex c) {
  for (NodeSet s : catalog.sets)
    if (s.contains(c)) return set_verdict(s);
  return {};
}

SetVerdict classify_d4(const Dag& dag, NodeIndex c) {
  require_covariate(dag, c);
  return classify_d4(minimal_sufficient_sets(dag), c);
}

BiasVerdict classify_d5(const EffectEvaluator& effects, NodeIndex c) {
  const Dag& dag = effects.model().dag();
  require_covariate(dag, c);
  BiasVerdict v;
  const auto w = first_witness(dag, c, [&](NodeSet x) {
    return abs_value(effects.bias(x.with(c))) < abs_value(effects.bias(x));
  });
  if (w) {
    v.holds = true;
    v.witness = w;
    v.abs_bias = std::make_pair(abs_value(effects.bias(w->with(c))), abs_value(effects.bias(*w)));
  }
  return v;
}

BiasVerdict classify_d5(const DiscreteModel& model, NodeIndex c) { return classify_d5(EffectEvaluator(model), c); }

SetVerdict classify_d6(const EffectEvaluator& effects, NodeIndex c) {
  const Dag& dag = effects.model().dag();
  require_covariate(dag, c);
  return set_verdict(first_witness(
      dag, c, [&](NodeSet x) { return effects.standardized_rd(x.with(c)) != effects.standardized_rd(x); }));
}

SetVerdict classify_d6(const DiscreteModel& model, NodeIndex c) { return classify_d6(EffectEvaluator(model), c); }

bool surrogate_confounder(const DiscreteModel& model, NodeIndex c) {
  return classify_d5(model, c).holds && !classify_d4(model.dag(), c).holds;
}

SetVerdict conditional_confounder(const Dag& dag, NodeIndex c, NodeSet l) {
  require_covariate(dag, c);
  if (!l.is_subset_of(dag.covariate_pool()))
    throw Error(ErrorKind::NotACovariate, dag.format_set(l - dag.covariate_pool()) + " not in the covariate pool");
  if (l.contains(c))
    throw Error(ErrorKind::NotACovariate, "'" + dag.name(c) + "' is part of the conditioning set");
  require_enumerable(dag);

  const BackdoorTester tester(dag);
  std::unordered_map<std::uint64_t, bool> memo;
  auto sufficient = [&](NodeSet s) {
    auto it = memo.find(s.bits());
    if (it == memo.end()) it = memo.emplace(s.bits(), tester.blocks(s)).first;
    return it->second;
  };

  const std::vector<NodeIndex> free = dag.sorted_by_name(dag.covariate_pool() - l - NodeSet{c});
  std::optional<NodeSet> found;
  for_each_subset_by_size(free, [&](NodeSet x) {
    const NodeSet m = x.with(c);
    if (!sufficient(m | l)) return true;
    // every proper submask of m, down to the empty set
    const std::uint64_t mb = m.bits();
    for (std::uint64_t t = (mb - 1) & mb;; t = (t - 1) & mb) {
      if (sufficient(NodeSet(t) | l)) return true;
      if (t == 0) break;
    }
    found = x;
    return false;
  });
  return set_verdict(found);
}

ImplicationCheck check_implications(const ConfounderReport& report, bool has_model) {
  auto get = [&](DefinitionId d) {
    auto it = report.verdicts.find(d);
    if (it == report.verdicts.end())
      throw Error(ErrorKind::IncompleteReport, "report lacks a verdict for " + std::string(to_string(d)));
    return it->second;
  };
  for (DefinitionId d : {DefinitionId::D1, DefinitionId::D2, DefinitionId::D3, DefinitionId::D4}) get(d);
  if (has_model) {
    get(DefinitionId::D5);
    get(DefinitionId::D6);
  }

  ImplicationCheck out;
  for (const Implication& i : kGraphImplications)
    if (get(i.antecedent) && !get(i.consequent)) out.violated.push_back(i);
  if (has_model) {
    for (const Implication& i : kModelImplications) {
      bool consequent = get(i.consequent);
      if (i.consequent == DefinitionId::D1 && report.d1_numeric) consequent = *report.d1_numeric;
      if (get(i.antecedent) && !consequent) out.violated.push_back(i);
    }
  }
  for (const Implication& i : kTypicalImplications) {
    if (needs_model(i.antecedent) || needs_model(i.consequent))
      if (!has_model) continue;
    if (get(i.antecedent) && !get(i.consequent)) out.typical_failures.push_back(i);
  }
  out.ok = out.violated.empty();
  return out;
}

namespace {

ConfounderReport classify_with(const Dag& dag, const MinimalSetCatalog& catalog, const EffectEvaluator* effects,
                               NodeIndex c) {
  ConfounderReport r;
  r.variable = c;

  const SetVerdict d1 = classify_d1_graphical(dag, c);
  r.verdicts[DefinitionId::D1] = d1.holds;
  if (d1.witness) r.witnesses[DefinitionId::D1] = *d1.witness;

  PathVerdict d2 = classify_d2(dag, c);
  r.verdicts[DefinitionId::D2] = d2.holds;
  if (d2.witness) r.witnesses[DefinitionId::D2] = std::move(*d2.witness);

  r.verdicts[DefinitionId::D3] = classify_d3(catalog, c);
  if (r.verdicts[DefinitionId::D3]) r.witnesses[DefinitionId::D3] = catalog.sets.front();

  const SetVerdict d4 = classify_d4(catalog, c);
  r.verdicts[DefinitionId::D4] = d4.holds;
  if (d4.witness) r.witnesses[DefinitionId::D4] = *d4.witness;

  if (effects) {
    const SetVerdict d1n = classify_d1_numeric(effects->model(), c);
    r.d1_numeric = d1n.holds;
    r.d1_numeric_witness = d1n.witness;

    const BiasVerdict d5 = classify_d5(*effects, c);
    r.verdicts[DefinitionId::D5] = d5.holds;
    if (d5.witness) r.witnesses[DefinitionId::D5] = *d5.witness;
    r.d5_abs_bias = d5.abs_bias;

    const SetVerdict d6 = classify_d6(*effects, c);
    r.verdicts[DefinitionId::D6] = d6.holds;
    if (d6.witness) r.witnesses[DefinitionId::D6] = *d6.witness;

    r.surrogate = d5.holds && !d4.holds;
  }

  const ImplicationCheck check = check_implications(r, effects != nullptr);
  r.lattice_ok = check.ok;
  r.violations = check.violated;
  r.typical_failures = check.typical_failures;
  return r;
}

void require_same_dag(const Dag& dag, const DiscreteModel* model) {
  if (model && model->dag().names() != dag.names())
    throw Error(ErrorKind::InvalidModel, "model was built over a different diagram");
}

}  // namespace

ConfounderReport classify(const Dag& dag, const DiscreteModel* model, NodeIndex c) {
  require_same_dag(dag, model);
  require_covariate(dag, c);
  const MinimalSetCatalog catalog = minimal_sufficient_sets(dag);
  if (!model) return classify_with(dag, catalog, nullptr, c);
  const EffectEvaluator effects(*model);
  return classify_with(dag, catalog, &effects, c);
}

std::vector<ConfounderReport> classify_all(const Dag& dag, const DiscreteModel* model) {
  require_same_dag(dag, model);
  const MinimalSetCatalog catalog = minimal_sufficient_sets(dag);
  std::optional<EffectEvaluator> effects;
  if (model) effects.emplace(*model);
  std::vector<ConfounderReport> out;
  for (NodeIndex c : dag.sorted_by_name(dag.covariate_pool()))
    out.push_back(classify_with(dag, catalog, effects ? &*effects : nullptr, c));
  return out;
}

}  // namespace confound
