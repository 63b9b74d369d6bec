#pragma once

// The analyses behind each CLI subcommand, shared with the Python module.
// Names in `variable`, `set` and `defs` arguments are user input and are
// validated here (InvalidConfig on unknown names).

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "confound/report.hpp"

namespace confound {

/// "C1, C2" -> {C1,C2}. Blank input gives the empty set.
NodeSet parse_node_list(const Dag& dag, const std::string& text);

struct ClassifyResult {
  std::set<DefinitionId> definitions;
  std::vector<ConfounderReport> reports;
  /// cf_unconfounded(model, {}) when a model is given.
  std::optional<bool> unconfounded_empty;
};

/// `defs` is a comma-separated list ("D1,D4"); blank selects every
/// definition the inputs support. Throws MissingModel when D5/D6 are
/// requested without a model.
ClassifyResult run_classify(const Dag& dag, const DiscreteModel* model, const std::string& variable = "",
                            const std::string& defs = "");
Json classify_json(const Dag& dag, const ClassifyResult& r, const ReportStyle& style = {});
std::string classify_text(const Dag& dag, const ClassifyResult& r, const ReportStyle& style = {});

struct PropertiesResult {
  DefinitionId definition = DefinitionId::D1;
  NodeSet confounders;
  std::vector<PropertyVerdict> verdicts;  // P1, P2A, then P2B with a model
};

PropertiesResult run_properties(const Dag& dag, const DiscreteModel* model, const std::string& definition,
                                const std::string& variable = "");
Json properties_json(const Dag& dag, const PropertiesResult& r, const ReportStyle& style = {});
std::string properties_text(const Dag& dag, const PropertiesResult& r, const ReportStyle& style = {});

struct SelectResult {
  std::string mode;  // backward, forward or robins
  OracleKind oracle = OracleKind::Graphical;
  NodeSet set, keep;
  std::optional<SelectionTrace> trace;
  std::optional<RobinsResult> robins;
};

/// `oracle` is "graphical", "numeric" or blank (numeric when a model is
/// given). `keep` is S1 and `set` is S2 in robins mode.
SelectResult run_select(const Dag& dag, const DiscreteModel* model, const std::string& mode, const std::string& set,
                        const std::string& keep = "", const std::string& oracle = "");
Json select_json(const Dag& dag, const SelectResult& r);
std::string select_text(const Dag& dag, const SelectResult& r);

}  // namespace confound
