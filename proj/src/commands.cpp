#include "confound/commands.hpp"

#include <sstream>

#include "confound/error.hpp"

namespace confound {

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    out.push_back(item.substr(first, item.find_last_not_of(" \t") - first + 1));
  }
  return out;
}

NodeIndex parse_node(const Dag& dag, const std::string& name) {
  const auto v = dag.find(name);
  if (!v) throw Error(ErrorKind::InvalidConfig, "unknown node '" + name + "'");
  return *v;
}

}  // namespace

NodeSet parse_node_list(const Dag& dag, const std::string& text) {
  NodeSet s;
  for (const std::string& name : split_list(text)) s.insert(parse_node(dag, name));
  return s;
}

// ------------------------------------------------------------- classify

ClassifyResult run_classify(const Dag& dag, const DiscreteModel* model, const std::string& variable,
                            const std::string& defs) {
  ClassifyResult r;
  if (split_list(defs).empty()) {
    for (DefinitionId d : kAllDefinitions)
      if (!needs_model(d) || model) r.definitions.insert(d);
  } else {
    for (const std::string& d : split_list(defs)) r.definitions.insert(parse_definition(d));
  }
  for (DefinitionId d : r.definitions)
    if (needs_model(d) && !model)
      throw Error(ErrorKind::MissingModel, std::string(to_string(d)) + " needs a model file");
  if (variable.empty())
    r.reports = classify_all(dag, model);
  else
    r.reports.push_back(classify(dag, model, parse_node(dag, variable)));
  if (model) r.unconfounded_empty = cf_unconfounded(*model, {});
  return r;
}

Json classify_json(const Dag& dag, const ClassifyResult& r, const ReportStyle& style) {
  Json list = Json::array();
  for (const ConfounderReport& rep : r.reports) list.push_back(report_json(dag, rep, r.definitions, style));
  Json names = Json::array();
  for (DefinitionId d : r.definitions) names.push_back(std::string(to_string(d)));
  return Json{{"exposure", dag.name(dag.exposure())},
              {"outcome", dag.name(dag.outcome())},
              {"covariate_pool", set_json(dag, dag.covariate_pool())},
              {"has_model", r.unconfounded_empty.has_value()},
              {"definitions", names},
              {"variables", list},
              {"cf_unconfounded_empty", r.unconfounded_empty ? Json(*r.unconfounded_empty) : Json(nullptr)}};
}

std::string classify_text(const Dag& dag, const ClassifyResult& r, const ReportStyle& style) {
  std::string out = reports_text(dag, r.reports, r.definitions, style);
  if (r.unconfounded_empty) {
    out += "note: cf-unconfounded({}) ";
    out += *r.unconfounded_empty ? "true\n" : "false; Y_a depends on A without adjustment\n";
  }
  return out;
}

// ----------------------------------------------------------- properties

PropertiesResult run_properties(const Dag& dag, const DiscreteModel* model, const std::string& definition,
                                const std::string& variable) {
  PropertiesResult r;
  r.definition = parse_definition(definition);
  r.confounders = confounders_under(dag, model, r.definition);
  r.verdicts.push_back(check_property1(dag, model, r.definition));
  if (variable.empty()) {
    r.verdicts.push_back(check_property2a(dag, model, r.definition));
    if (model) r.verdicts.push_back(check_property2b(*model, r.definition));
  } else {
    const NodeIndex v = parse_node(dag, variable);
    r.verdicts.push_back(check_property2a(dag, model, r.definition, v));
    if (model) r.verdicts.push_back(check_property2b(*model, r.definition, v));
  }
  return r;
}

Json properties_json(const Dag& dag, const PropertiesResult& r, const ReportStyle& style) {
  Json list = Json::array();
  for (const PropertyVerdict& v : r.verdicts) list.push_back(property_json(dag, v, style));
  return Json{{"definition", std::string(to_string(r.definition))},
              {"confounders", set_json(dag, r.confounders)},
              {"verdicts", list}};
}

std::string properties_text(const Dag& dag, const PropertiesResult& r, const ReportStyle& style) {
  std::string out = std::string(to_string(r.definition)) + " confounders: " + dag.format_set(r.confounders) + "\n";
  for (const PropertyVerdict& v : r.verdicts) out += property_text(dag, v, style) + "\n";
  return out;
}

// --------------------------------------------------------------- select

SelectResult run_select(const Dag& dag, const DiscreteModel* model, const std::string& mode, const std::string& set,
                        const std::string& keep, const std::string& oracle) {
  if (mode != "backward" && mode != "forward" && mode != "robins")
    throw Error(ErrorKind::InvalidConfig, "unknown selection mode '" + mode + "'");
  if (!oracle.empty() && oracle != "graphical" && oracle != "numeric")
    throw Error(ErrorKind::InvalidConfig, "unknown oracle '" + oracle + "'");
  if (oracle == "numeric" && !model) throw Error(ErrorKind::MissingModel, "the numeric oracle needs a model file");
  const bool numeric = oracle.empty() ? model != nullptr : oracle == "numeric";
  const IndependenceOracle o = numeric ? IndependenceOracle::numeric(*model) : IndependenceOracle::graphical(dag);

  SelectResult r;
  r.mode = mode;
  r.oracle = o.kind();
  r.set = parse_node_list(dag, set);
  r.keep = parse_node_list(dag, keep);
  if (mode == "robins") {
    r.robins = robins_reduction(o, r.keep, r.set);
    return r;
  }
  if (!r.keep.empty()) throw Error(ErrorKind::InvalidConfig, "--keep applies to robins mode only");
  r.trace = mode == "backward" ? backward_select(o, r.set) : forward_select(o, r.set);
  return r;
}

Json select_json(const Dag& dag, const SelectResult& r) {
  if (r.robins) return robins_json(dag, *r.robins, r.keep, r.set, r.oracle);
  return trace_json(dag, *r.trace, r.oracle);
}

std::string select_text(const Dag& dag, const SelectResult& r) {
  if (r.robins)
    return "robins reduction S1=" + dag.format_set(r.keep) + " S2=" + dag.format_set(r.set) + ": " +
           robins_text(dag, *r.robins);
  return trace_text(dag, *r.trace);
}

}  // namespace confound
