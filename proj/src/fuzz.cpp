#include "confound/fuzz.hpp"

#include <algorithm>
#include <cmath>

#include "confound/error.hpp"
#include "confound/properties.hpp"
#include "confound/random_models.hpp"
#include "confound/selection.hpp"

namespace confound {

void validate(const FuzzConfig& config) {
  if (!config.seed) throw Error(ErrorKind::InvalidConfig, "a seed is required");
  if (config.n_nodes < 2 || config.n_nodes > 10)
    throw Error(ErrorKind::InvalidConfig, "node count must lie in [2, 10]");
  if (!std::isfinite(config.edge_prob) || config.edge_prob < 0.0 || config.edge_prob > 1.0)
    throw Error(ErrorKind::InvalidConfig, "edge probability must lie in [0, 1]");
  if (config.model_max_nodes > 10) throw Error(ErrorKind::InvalidConfig, "model node bound must be at most 10");
}

std::size_t FuzzReport::hard_failures() const {
  std::size_t n = 0;
  for (const auto& [name, count] : hard) n += count;
  return n;
}

namespace {

class TrialRunner {
 public:
  TrialRunner(FuzzReport& report, std::size_t trial) : report_(report), trial_(trial) {}

  void fail(const char* check, std::string detail) {
    ++report_.hard[check];
    if (report_.failures.size() < kMaxRecordedFailures) report_.failures.push_back({trial_, check, std::move(detail)});
  }

  void run(const Dag& dag, const DiscreteModel* model, bool with_selection);

 private:
  void check_graph(const Dag& dag, const MinimalSetCatalog& cat, const BackdoorTester& tester);
  void check_reports(const Dag& dag, const std::vector<ConfounderReport>& reports, bool has_model);
  void check_model(const Dag& dag, const DiscreteModel& model, const BackdoorTester& tester);
  void check_selection(const Dag& dag, const BackdoorTester& tester);

  FuzzReport& report_;
  std::size_t trial_;
};

void TrialRunner::run(const Dag& dag, const DiscreteModel* model, bool with_selection) {
  const MinimalSetCatalog cat = minimal_sufficient_sets(dag);
  const BackdoorTester tester(dag);
  check_graph(dag, cat, tester);
  check_reports(dag, classify_all(dag, model), model != nullptr);
  if (model) check_model(dag, *model, tester);
  if (with_selection) check_selection(dag, tester);
}

void TrialRunner::check_graph(const Dag& dag, const MinimalSetCatalog& cat, const BackdoorTester& tester) {
  if (!tester.blocks(cat.set_union))
    fail(fuzz_check::kUnionSufficient, "union " + dag.format_set(cat.set_union) + " is not sufficient");

  const NodeSet ancestral = dag.ancestors(dag.exposure()) | dag.ancestors(dag.outcome());
  for (NodeSet s : cat.sets)
    if (!s.is_subset_of(ancestral))
      fail(fuzz_check::kMinimalInAncestors, "minimal set " + dag.format_set(s) + " leaves An(A)+An(Y)");

  for (NodeIndex c : dag.covariate_pool()) {
    const bool cond = conditional_confounder(dag, c, {}).holds;
    if (cond != classify_d4(cat, c).holds)
      fail(fuzz_check::kConditionalReduces, dag.name(c) + ": conditional given {} disagrees with D4");
  }

  const std::pair<DefinitionId, const char*> p1_checks[] = {
      {DefinitionId::D1, fuzz_check::kProperty1D1},
      {DefinitionId::D2, fuzz_check::kProperty1D2},
      {DefinitionId::D4, fuzz_check::kProperty1D4},
  };
  for (const auto& [def, check] : p1_checks) {
    const PropertyVerdict v = check_property1(dag, nullptr, def);
    if (!v.holds) fail(check, v.detail);
  }

  NodeSet completing;
  for (NodeIndex c : dag.covariate_pool())
    if (completes_sufficient_set(dag, c)) completing.insert(c);
  if (!tester.blocks(completing)) ++report_.observed[fuzz_observation::kCompletionDefinitionP1];
}

void TrialRunner::check_reports(const Dag& dag, const std::vector<ConfounderReport>& reports, bool has_model) {
  for (const ConfounderReport& r : reports) {
    ++report_.covariates_classified;
    const ImplicationCheck graph = check_implications(r, false);
    for (const Implication& i : graph.violated)
      fail(fuzz_check::kGraphLattice, dag.name(r.variable) + ": " + to_string(i));
    if (!has_model) {
      for (const Implication& i : graph.typical_failures) ++report_.typical_failures[to_string(i)];
      continue;
    }
    const ImplicationCheck full = check_implications(r, true);
    for (const Implication& i : full.violated)
      if (std::find(graph.violated.begin(), graph.violated.end(), i) == graph.violated.end())
        fail(fuzz_check::kModelLattice, dag.name(r.variable) + ": " + to_string(i));
    for (const Implication& i : full.typical_failures) ++report_.typical_failures[to_string(i)];
    if (r.d1_numeric && *r.d1_numeric != r.verdicts.at(DefinitionId::D1))
      ++report_.observed[fuzz_observation::kFaithfulness];
    if (r.surrogate && *r.surrogate) ++report_.observed[fuzz_observation::kSurrogates];
  }
}

void TrialRunner::check_model(const Dag& dag, const DiscreteModel& model, const BackdoorTester& tester) {
  const CounterfactualJoint cf0 = cf_joint(model, 0), cf1 = cf_joint(model, 1);
  const EffectEvaluator effects(model);
  const std::vector<NodeIndex> pool = dag.sorted_by_name(dag.covariate_pool());
  for_each_subset_by_size(pool, [&](NodeSet s) {
    const bool sufficient = tester.blocks(s);
    const bool unconfounded = cf_unconfounded(cf0, cf1, s);
    if (sufficient && !unconfounded)
      fail(fuzz_check::kBridge, dag.format_set(s) + " is sufficient but Y_a depends on A given it");
    if (!sufficient && unconfounded) ++report_.observed[fuzz_observation::kConverseBridge];
    if (sufficient && effects.standardized_rd(s) != effects.ace())
      fail(fuzz_check::kGFormula, "standardized RD over " + dag.format_set(s) + " is " +
                                      to_exact_string(effects.standardized_rd(s)) + ", effect is " +
                                      to_exact_string(effects.ace()));
    return true;
  });
}

void TrialRunner::check_selection(const Dag& dag, const BackdoorTester& tester) {
  const IndependenceOracle oracle = IndependenceOracle::graphical(dag);
  const std::vector<NodeIndex> pool = dag.sorted_by_name(dag.covariate_pool());
  for_each_subset_by_size(pool, [&](NodeSet s) {
    if (!tester.blocks(s)) return true;
    ++report_.sufficient_sets_checked;
    const SelectionTrace back = backward_select(oracle, s);
    if (!tester.blocks(back.final_set))
      fail(fuzz_check::kBackward, "from " + dag.format_set(s) + " to " + dag.format_set(back.final_set));
    const SelectionTrace fwd = forward_select(oracle, s);
    if (!tester.blocks(fwd.final_set))
      fail(fuzz_check::kForward, "from " + dag.format_set(s) + " to " + dag.format_set(fwd.final_set));
    const std::vector<NodeIndex> members = dag.sorted_by_name(s);
    for_each_subset_by_size(members, [&](NodeSet s1) {
      const RobinsResult r = robins_reduction(oracle, s1, s - s1);
      if (r.holds && !tester.blocks(s1))
        fail(fuzz_check::kRobins, "S1 " + dag.format_set(s1) + " with S2 " + dag.format_set(s - s1));
      return true;
    });
    return true;
  });
}

}  // namespace

FuzzReport fuzz(const FuzzConfig& config) {
  validate(config);
  FuzzReport report;
  report.config = config;
  for (const char* check :
       {fuzz_check::kUnionSufficient, fuzz_check::kMinimalInAncestors, fuzz_check::kGraphLattice,
        fuzz_check::kConditionalReduces, fuzz_check::kProperty1D1, fuzz_check::kProperty1D2,
        fuzz_check::kProperty1D4})
    report.hard[check] = 0;
  if (config.with_models)
    for (const char* check : {fuzz_check::kModelLattice, fuzz_check::kBridge, fuzz_check::kGFormula})
      report.hard[check] = 0;
  if (config.with_selection)
    for (const char* check : {fuzz_check::kBackward, fuzz_check::kForward, fuzz_check::kRobins})
      report.hard[check] = 0;
  for (const char* obs : {fuzz_observation::kCompletionDefinitionP1})
    report.observed[obs] = 0;
  if (config.with_models)
    for (const char* obs :
         {fuzz_observation::kFaithfulness, fuzz_observation::kConverseBridge, fuzz_observation::kSurrogates})
      report.observed[obs] = 0;

  Rng rng(*config.seed);
  const RandomDagConfig dag_config{2, config.n_nodes, config.edge_prob};
  for (std::size_t t = 0; t < config.n_trials; ++t) {
    const Dag dag = random_dag(rng, dag_config);
    std::optional<DiscreteModel> model;
    if (config.with_models && dag.size() <= config.model_max_nodes) {
      model.emplace(random_model(rng, dag));
      ++report.model_trials;
    }
    TrialRunner(report, t).run(dag, model ? &*model : nullptr, config.with_selection);
    ++report.trials;
  }
  return report;
}

}  // namespace confound
