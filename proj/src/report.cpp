#include "confound/report.hpp"

#include <sstream>

namespace confound {

namespace {

const char* mark(bool b) { return b ? "✓" : "✗"; }

std::string number_text(const Rational& r, const ReportStyle& style) {
  return style.exact ? to_exact_string(r) : to_decimal(r, style.digits, style.rounding);
}

Json names_json(const std::vector<std::string>& names) {
  Json out = Json::array();
  for (const auto& n : names) out.push_back(n);
  return out;
}

Json implications_json(const std::vector<Implication>& list) {
  Json out = Json::array();
  for (const Implication& i : list) out.push_back(to_string(i));
  return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

}  // namespace

Json rational_json(const Rational& r, const ReportStyle& style) {
  return Json{{"exact", to_exact_string(r)}, {"decimal", to_decimal(r, style.digits, style.rounding)}};
}

Json set_json(const Dag& dag, NodeSet s) { return names_json(dag.names_of(s)); }

Json path_json(const Dag& dag, const Path& p) {
  Json nodes = Json::array();
  for (NodeIndex v : p.nodes) nodes.push_back(dag.name(v));
  return Json{{"text", format_path(dag, p)}, {"nodes", nodes}};
}

Json verdict_json(const Dag& dag, const AdjustmentVerdict& v) {
  Json out{{"set", set_json(dag, v.set)}, {"sufficient", v.sufficient}, {"minimal", v.minimal}};
  out["open_backdoor_path"] = v.open_backdoor_witness ? path_json(dag, *v.open_backdoor_witness) : Json(nullptr);
  return out;
}

Json catalog_json(const Dag& dag, const MinimalSetCatalog& cat, const AdjustmentVerdict& union_verdict) {
  Json sets = Json::array();
  for (NodeSet s : cat.sets) sets.push_back(set_json(dag, s));
  return Json{{"exposure", dag.name(dag.exposure())},
              {"outcome", dag.name(dag.outcome())},
              {"covariate_pool", set_json(dag, dag.covariate_pool())},
              {"minimal_sets", sets},
              {"union", verdict_json(dag, union_verdict)}};
}

Json report_json(const Dag& dag, const ConfounderReport& r, const std::set<DefinitionId>& defs,
                 const ReportStyle& style) {
  Json definitions = Json::object();
  for (const auto& [d, holds] : r.verdicts) {
    if (!defs.count(d)) continue;
    Json entry{{"holds", holds}};
    auto w = r.witnesses.find(d);
    if (w == r.witnesses.end()) {
      entry["witness"] = nullptr;
    } else if (const Path* p = std::get_if<Path>(&w->second)) {
      entry["witness"] = Json{{"path", path_json(dag, *p)}};
    } else {
      const NodeSet s = std::get<NodeSet>(w->second);
      const char* key = (d == DefinitionId::D3 || d == DefinitionId::D4) ? "minimal_set" : "X";
      entry["witness"] = Json{{key, set_json(dag, s)}};
      if (d == DefinitionId::D5 && r.d5_abs_bias) {
        entry["witness"]["abs_bias_with"] = rational_json(r.d5_abs_bias->first, style);
        entry["witness"]["abs_bias_without"] = rational_json(r.d5_abs_bias->second, style);
      }
    }
    definitions[std::string(to_string(d))] = entry;
  }
  Json out{{"variable", dag.name(r.variable)}, {"definitions", definitions}};
  if (r.d1_numeric) {
    out["d1_distributional"] = Json{
        {"holds", *r.d1_numeric},
        {"witness", r.d1_numeric_witness ? Json{{"X", set_json(dag, *r.d1_numeric_witness)}} : Json(nullptr)}};
  } else {
    out["d1_distributional"] = nullptr;
  }
  out["surrogate"] = r.surrogate ? Json(*r.surrogate) : Json(nullptr);
  out["lattice_ok"] = r.lattice_ok;
  out["violations"] = implications_json(r.violations);
  out["typical_failures"] = implications_json(r.typical_failures);
  return out;
}

Json property_json(const Dag& dag, const PropertyVerdict& v, const ReportStyle& style) {
  Json w = Json::object();
  w["variable"] = v.witness.variable ? Json(dag.name(*v.witness.variable)) : Json(nullptr);
  w["set"] = v.witness.set ? set_json(dag, *v.witness.set) : Json(nullptr);
  w["open_path"] = v.witness.open_path ? path_json(dag, *v.witness.open_path) : Json(nullptr);
  w["abs_bias_with"] = v.witness.abs_bias_with ? rational_json(*v.witness.abs_bias_with, style) : Json(nullptr);
  w["abs_bias_without"] =
      v.witness.abs_bias_without ? rational_json(*v.witness.abs_bias_without, style) : Json(nullptr);
  return Json{{"property", std::string(to_string(v.property))},
              {"definition", std::string(to_string(v.definition))},
              {"holds", v.holds},
              {"vacuous", v.vacuous},
              {"witness", w},
              {"detail", v.detail}};
}

Json trace_json(const Dag& dag, const SelectionTrace& t, OracleKind oracle) {
  Json steps = Json::array();
  for (const SelectionStep& s : t.steps) {
    steps.push_back(Json{{"variable", dag.name(s.variable)},
                         {"query", Json{{"a", set_json(dag, s.query.a)},
                                        {"b", set_json(dag, s.query.b)},
                                        {"given", set_json(dag, s.query.z)}}},
                         {"independent", s.query.independent},
                         {"applied", s.applied},
                         {"faithfulness_caveat", s.faithfulness_caveat}});
  }
  return Json{{"mode", std::string(to_string(t.mode))},
              {"oracle", std::string(to_string(oracle))},
              {"initial", set_json(dag, t.initial)},
              {"steps", steps},
              {"final", set_json(dag, t.final_set)},
              {"faithfulness_caveat", t.faithfulness_caveat}};
}

Json robins_json(const Dag& dag, const RobinsResult& r, NodeSet s1, NodeSet s2, OracleKind oracle) {
  Json out{{"mode", "robins"},
           {"oracle", std::string(to_string(oracle))},
           {"s1", set_json(dag, s1)},
           {"s2", set_json(dag, s2)},
           {"holds", r.holds}};
  out["partition"] = r.partition ? Json{{"t1", set_json(dag, r.partition->first)},
                                        {"t2", set_json(dag, r.partition->second)}}
                                 : Json(nullptr);
  out["partitions_tried"] = r.partitions_tried;
  return out;
}

Json fuzz_json(const FuzzReport& r) {
  const FuzzConfig& c = r.config;
  Json config{{"seed", c.seed ? Json(*c.seed) : Json(nullptr)},
              {"n_nodes", c.n_nodes},
              {"edge_prob", c.edge_prob},
              {"n_trials", c.n_trials},
              {"with_models", c.with_models},
              {"model_max_nodes", c.model_max_nodes},
              {"with_selection", c.with_selection}};
  Json hard = Json::object(), observed = Json::object(), typical = Json::object();
  for (const auto& [k, v] : r.hard) hard[k] = v;
  for (const auto& [k, v] : r.observed) observed[k] = v;
  for (const auto& [k, v] : r.typical_failures) typical[k] = v;
  Json failures = Json::array();
  for (const FuzzFailure& f : r.failures)
    failures.push_back(Json{{"trial", f.trial}, {"check", f.check}, {"detail", f.detail}});
  return Json{{"config", config},
              {"trials", r.trials},
              {"model_trials", r.model_trials},
              {"covariates_classified", r.covariates_classified},
              {"sufficient_sets_checked", r.sufficient_sets_checked},
              {"hard", hard},
              {"hard_failures", r.hard_failures()},
              {"observed", observed},
              {"typical_failures", typical},
              {"failures", failures}};
}

Json suite_json(const std::vector<SuiteRow>& rows) {
  Json list = Json::array();
  std::size_t passed = 0;
  for (const SuiteRow& r : rows) {
    passed += r.pass;
    list.push_back(Json{{"fixture", r.fixture},
                        {"claim", r.claim},
                        {"expected", r.expected},
                        {"observed", r.observed},
                        {"pass", r.pass}});
  }
  return Json{{"rows", list}, {"passed", passed}, {"failed", rows.size() - passed}};
}

// ------------------------------------------------------------------ text

std::string catalog_text(const Dag& dag, const MinimalSetCatalog& cat, const AdjustmentVerdict& union_verdict) {
  std::vector<std::string> sets;
  for (NodeSet s : cat.sets) sets.push_back(dag.format_set(s));
  // a lone empty set needs no union clause
  if (cat.sets.size() == 1 && cat.sets.front().empty()) return "{}";
  return join(sets, ", ") + "; union " + dag.format_set(union_verdict.set) +
         (union_verdict.sufficient ? " sufficient" : " NOT sufficient");
}

std::string reports_text(const Dag& dag, const std::vector<ConfounderReport>& reports,
                         const std::set<DefinitionId>& defs, const ReportStyle& style) {
  std::ostringstream out;
  for (const ConfounderReport& r : reports) {
    std::vector<std::string> cells;
    for (const auto& [d, holds] : r.verdicts) {
      if (!defs.count(d)) continue;
      std::string cell = std::string(to_string(d)) + " " + mark(holds);
      auto w = r.witnesses.find(d);
      if (w != r.witnesses.end()) {
        if (const Path* p = std::get_if<Path>(&w->second))
          cell += " (" + format_path(dag, *p) + ")";
        else if (d == DefinitionId::D3 || d == DefinitionId::D4)
          cell += " (in " + dag.format_set(std::get<NodeSet>(w->second)) + ")";
        else
          cell += " (X=" + dag.format_set(std::get<NodeSet>(w->second)) + ")";
      }
      cells.push_back(cell);
    }
    out << dag.name(r.variable) << ": " << join(cells, ", ") << "\n";
    if (r.d1_numeric && defs.count(DefinitionId::D1)) {
      out << "  D1 in distribution " << mark(*r.d1_numeric);
      if (r.d1_numeric_witness) out << " (X=" << dag.format_set(*r.d1_numeric_witness) << ")";
      out << "\n";
    }
    if (r.d5_abs_bias && defs.count(DefinitionId::D5))
      out << "  |bias| " << number_text(r.d5_abs_bias->second, style) << " -> "
          << number_text(r.d5_abs_bias->first, style) << "\n";
    if (r.surrogate) out << "  surrogate confounder " << mark(*r.surrogate) << "\n";
    if (!r.lattice_ok) {
      std::vector<std::string> v;
      for (const Implication& i : r.violations) v.push_back(to_string(i));
      out << "  implication violated: " << join(v, ", ") << "\n";
    }
    if (!r.typical_failures.empty()) {
      std::vector<std::string> v;
      for (const Implication& i : r.typical_failures) v.push_back(to_string(i));
      out << "  typical implication not holding: " << join(v, ", ") << "\n";
    }
  }
  return out.str();
}

std::string property_text(const Dag& dag, const PropertyVerdict& v, const ReportStyle& style) {
  std::string out = std::string(to_string(v.property)) + " " + (v.holds ? "PASS" : "FAIL");
  if (v.vacuous) out += " (vacuous)";
  const PropertyWitness& w = v.witness;
  std::vector<std::string> parts;
  if (w.variable) parts.push_back("variable " + dag.name(*w.variable));
  if (w.set) parts.push_back((v.property == PropertyId::P1 ? "S=" : "X=") + dag.format_set(*w.set));
  if (w.open_path) parts.push_back("open path " + format_path(dag, *w.open_path));
  if (w.abs_bias_with && w.abs_bias_without)
    parts.push_back("|bias| " + number_text(*w.abs_bias_without, style) + " -> " +
                    number_text(*w.abs_bias_with, style));
  if (!parts.empty()) out += " witness " + join(parts, ", ");
  if (!v.detail.empty()) out += "; " + v.detail;
  return out;
}

std::string trace_text(const Dag& dag, const SelectionTrace& t) {
  std::ostringstream out;
  out << to_string(t.mode) << " selection from " << dag.format_set(t.initial) << "\n";
  std::size_t n = 0;
  for (const SelectionStep& s : t.steps) {
    out << "  " << ++n << ". " << dag.format_set(s.query.a) << (s.query.independent ? " _||_ " : " not _||_ ")
        << dag.format_set(s.query.b) << " | " << dag.format_set(s.query.z);
    if (s.applied) out << (t.mode == SelectionMode::Backward ? "  drop " : "  add ") << dag.name(s.variable);
    if (s.faithfulness_caveat) out << "  [unfaithful]";
    out << "\n";
  }
  out << "final " << dag.format_set(t.final_set) << "\n";
  if (t.faithfulness_caveat) out << "note: some independence holds in the model but not in the diagram\n";
  return out.str();
}

std::string robins_text(const Dag& dag, const RobinsResult& r) {
  if (!r.holds) return "no partition qualifies (" + std::to_string(r.partitions_tried) + " tried)\n";
  return "reducible: T1=" + dag.format_set(r.partition->first) + " T2=" + dag.format_set(r.partition->second) +
         " (" + std::to_string(r.partitions_tried) + " tried)\n";
}

std::string fuzz_text(const FuzzReport& r) {
  std::ostringstream out;
  out << "trials " << r.trials << " (with models " << r.model_trials << "), seed "
      << (r.config.seed ? std::to_string(*r.config.seed) : std::string("none")) << "\n";
  out << "hard check failures:\n";
  for (const auto& [k, v] : r.hard) out << "  " << k << " " << v << "\n";
  out << "observations:\n";
  for (const auto& [k, v] : r.observed) out << "  " << k << " " << v << "\n";
  for (const auto& [k, v] : r.typical_failures) out << "  typical " << k << " " << v << "\n";
  for (const FuzzFailure& f : r.failures) out << "FAIL trial " << f.trial << " " << f.check << ": " << f.detail << "\n";
  out << "hard failures " << r.hard_failures() << "\n";
  return out.str();
}

std::string suite_text(const std::vector<SuiteRow>& rows) {
  std::ostringstream out;
  std::size_t passed = 0;
  for (const SuiteRow& r : rows) {
    passed += r.pass;
    out << (r.pass ? "PASS " : "FAIL ") << r.fixture << ": " << r.claim << " | expected " << r.expected;
    if (!r.pass) out << " | observed " << r.observed;
    out << "\n";
  }
  out << passed << "/" << rows.size() << " claims reproduced\n";
  return out.str();
}

}  // namespace confound
