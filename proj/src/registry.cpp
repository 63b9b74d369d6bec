#include "confound/registry.hpp"

#include <filesystem>
#include <map>
#include <stdexcept>

#include "confound/adjustment.hpp"
#include "confound/definitions.hpp"
#include "confound/error.hpp"
#include "confound/io.hpp"
#include "confound/properties.hpp"
#include "confound/random_models.hpp"
#include "confound/selection.hpp"

namespace confound {

namespace detail {
const std::map<std::string, std::string>& embedded_fixtures();
}  // namespace detail

const RegistryEntry* Registry::find(const std::string& name) const {
  for (const RegistryEntry& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"m_bias",           "confounder_chain",  "alternative_sets",
                                              "single_confounder", "proxy_confounder", "cancellation"};
  return names;
}

std::optional<std::string> embedded_fixture(const std::string& file) {
  const auto& files = detail::embedded_fixtures();
  auto it = files.find(file);
  if (it == files.end()) return std::nullopt;
  return it->second;
}

Registry builtin_registry() {
  Registry r;
  for (const std::string& name : fixture_names()) {
    const auto graph = embedded_fixture(name + ".graph");
    if (!graph) continue;
    RegistryEntry e{name, parse_graph(*graph, name + ".graph"), std::nullopt};
    if (const auto model = embedded_fixture(name + ".json")) e.model.emplace(parse_model(*model, e.dag, name + ".json"));
    r.entries.push_back(std::move(e));
  }
  return r;
}

Registry load_registry(const std::string& dir) {
  namespace fs = std::filesystem;
  Registry r;
  for (const std::string& name : fixture_names()) {
    const fs::path graph = fs::path(dir) / (name + ".graph");
    if (!fs::exists(graph)) continue;
    RegistryEntry e{name, read_graph_file(graph.string()), std::nullopt};
    const fs::path model = fs::path(dir) / (name + ".json");
    if (fs::exists(model)) e.model.emplace(read_model_file(model.string(), e.dag));
    r.entries.push_back(std::move(e));
  }
  return r;
}

std::pair<DiscreteModel, std::size_t> search_model(const Dag& dag, std::uint64_t seed,
                                                   const std::function<bool(const DiscreteModel&)>& accept,
                                                   std::size_t max_attempts) {
  Rng rng(seed);
  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    DiscreteModel m = random_model(rng, dag);
    if (accept(m)) return {std::move(m), attempt};
  }
  throw Error(ErrorKind::InvalidConfig, "no acceptable model within " + std::to_string(max_attempts) + " attempts");
}

namespace {

Rational abs_value(const Rational& r) { return r < 0 ? Rational(-r) : r; }

}  // namespace

bool proxy_model_acceptable(const DiscreteModel& model) {
  const Dag& dag = model.dag();
  return abs_value(bias(model, dag.set_of({"C2"}))) < abs_value(bias(model, {}));
}

bool m_bias_model_acceptable(const DiscreteModel& model) {
  const Dag& dag = model.dag();
  return standardized_rd(model, dag.set_of({"C3"})) != standardized_rd(model, {});
}

bool alternative_sets_model_acceptable(const DiscreteModel& model) {
  return standardized_rd(model, {}) != ace(model);
}

// ------------------------------------------------------------------ suite

namespace {

std::string yes_no(bool b) { return b ? "true" : "false"; }

std::string catalog_text(const Dag& dag, const MinimalSetCatalog& cat) {
  std::string out;
  for (NodeSet s : cat.sets) {
    if (!out.empty()) out += ", ";
    out += dag.format_set(s);
  }
  return out;
}

std::string paths_text(const Dag& dag, const std::vector<Path>& paths) {
  std::string out;
  for (const Path& p : paths) {
    if (!out.empty()) out += ", ";
    out += format_path(dag, p);
  }
  return out.empty() ? "(none)" : out;
}

class Suite {
 public:
  explicit Suite(const Registry& reg) : reg_(reg) {}

  /// Claims that need only the diagram.
  void graph(const std::string& fixture, const std::string& claim, const std::string& expected,
             const std::function<std::string(const Dag&)>& observe) {
    add(fixture, claim, expected, [&]() -> std::string {
      const RegistryEntry* e = reg_.find(fixture);
      if (!e) throw std::runtime_error("fixture missing");
      return observe(e->dag);
    });
  }

  /// Claims that need the model.
  void model(const std::string& fixture, const std::string& claim, const std::string& expected,
             const std::function<std::string(const DiscreteModel&)>& observe) {
    add(fixture, claim, expected, [&]() -> std::string {
      const RegistryEntry* e = reg_.find(fixture);
      if (!e) throw std::runtime_error("fixture missing");
      if (!e->model) throw std::runtime_error("model missing");
      return observe(*e->model);
    });
  }

  std::vector<SuiteRow> rows;

 private:
  void add(const std::string& fixture, const std::string& claim, const std::string& expected,
           const std::function<std::string()>& observe) {
    SuiteRow row{fixture, claim, expected, "", false};
    try {
      row.observed = observe();
    } catch (const std::exception& e) {
      row.observed = std::string("error: ") + e.what();
    }
    row.pass = row.observed == expected;
    rows.push_back(std::move(row));
  }

  const Registry& reg_;
};

NodeIndex idx(const Dag& dag, const char* name) { return dag.index(name); }

// Property verdicts rendered with the failing variable's name.
std::string property_text(const Dag& dag, const PropertyVerdict& v) {
  std::string out = v.holds ? "holds" : "fails";
  if (!v.holds && v.witness.variable) out += " at " + dag.name(*v.witness.variable);
  if (v.property == PropertyId::P1 && !v.holds && v.witness.set) out += " with S=" + dag.format_set(*v.witness.set);
  return out;
}

std::string d1_text(const SetVerdict& v, const Dag& dag) {
  return v.holds ? "true with X=" + dag.format_set(*v.witness) : "false";
}

void m_bias_claims(Suite& s) {
  const std::string f = "m_bias";
  s.graph(f, "C1 and C2 are d-separated given {}", "true",
          [](const Dag& g) { return yes_no(d_separated(g, g.set_of({"C1"}), g.set_of({"C2"}), {})); });
  s.graph(f, "C1 and C2 are d-separated given {C3}", "false",
          [](const Dag& g) { return yes_no(d_separated(g, g.set_of({"C1"}), g.set_of({"C2"}), g.set_of({"C3"}))); });
  s.graph(f, "paths from A to Y", "A<-C1->C3<-C2->Y, A->Y",
          [](const Dag& g) { return paths_text(g, enumerate_paths(g, g.exposure(), g.outcome())); });
  s.graph(f, "the M-path is blocked given {} and open given {C3}", "blocked/open", [](const Dag& g) {
    const std::vector<Path> bd = backdoor_paths(g);
    if (bd.size() != 1) return std::string("unexpected backdoor paths");
    return std::string(is_blocked(g, bd[0], {}) ? "blocked" : "open") + "/" +
           (is_blocked(g, bd[0], g.set_of({"C3"})) ? "blocked" : "open");
  });
  s.graph(f, "the empty set is sufficient", "true", [](const Dag& g) { return yes_no(is_sufficient(g, {}).sufficient); });
  s.graph(f, "minimally sufficient sets", "{}", [](const Dag& g) { return catalog_text(g, minimal_sufficient_sets(g)); });
  s.graph(f, "C3 under D1", "true with X={}", [](const Dag& g) { return d1_text(classify_d1_graphical(g, idx(g, "C3")), g); });
  s.graph(f, "C1 under D1", "true with X={C3}", [](const Dag& g) { return d1_text(classify_d1_graphical(g, idx(g, "C1")), g); });
  s.graph(f, "C3 under D2", "false", [](const Dag& g) { return yes_no(classify_d2(g, idx(g, "C3")).holds); });
  s.graph(f, "C1, C2, C3 under D3", "false,false,false", [](const Dag& g) {
    return yes_no(classify_d3(g, idx(g, "C1"))) + "," + yes_no(classify_d3(g, idx(g, "C2"))) + "," +
           yes_no(classify_d3(g, idx(g, "C3")));
  });
  s.graph(f, "C3 under D4", "false", [](const Dag& g) { return yes_no(classify_d4(g, idx(g, "C3")).holds); });
  s.graph(f, "D1 and Property 1", "holds",
          [](const Dag& g) { return property_text(g, check_property1(g, nullptr, DefinitionId::D1)); });
  s.graph(f, "D1 and Property 2A", "fails at C3",
          [](const Dag& g) { return property_text(g, check_property2a(g, nullptr, DefinitionId::D1)); });
  s.model(f, "D1 and Property 2B", "fails at C3",
          [](const DiscreteModel& m) { return property_text(m.dag(), check_property2b(m, DefinitionId::D1)); });
  s.model(f, "C3 under D6", "true with X={}", [](const DiscreteModel& m) {
    const SetVerdict v = classify_d6(m, idx(m.dag(), "C3"));
    return v.holds ? "true with X=" + m.dag().format_set(*v.witness) : std::string("false");
  });
  s.model(f, "C3 under distributional D1", "true", [](const DiscreteModel& m) {
    return yes_no(classify_d1_numeric(m, idx(m.dag(), "C3")).holds);
  });
  s.model(f, "D6 and Property 2A", "fails at C3",
          [](const DiscreteModel& m) { return property_text(m.dag(), check_property2a(m.dag(), &m, DefinitionId::D6)); });
  s.model(f, "D6 and Property 2B", "fails at C3",
          [](const DiscreteModel& m) { return property_text(m.dag(), check_property2b(m, DefinitionId::D6)); });
  s.graph(f, "C1 is a confounder given L={C3}", "true",
          [](const Dag& g) { return yes_no(conditional_confounder(g, idx(g, "C1"), g.set_of({"C3"})).holds); });
  s.graph(f, "C2 is a confounder given L={C3}", "true",
          [](const Dag& g) { return yes_no(conditional_confounder(g, idx(g, "C2"), g.set_of({"C3"})).holds); });
  s.graph(f, "C1 completes a sufficient set with X={C3}", "{C3}", [](const Dag& g) {
    const auto x = completes_sufficient_set(g, idx(g, "C1"));
    return x ? g.format_set(*x) : std::string("none");
  });
  s.model(f, "implication lattice holds for every covariate", "true", [](const DiscreteModel& m) {
    bool ok = true;
    for (const ConfounderReport& r : classify_all(m.dag(), &m)) ok = ok && r.lattice_ok;
    return yes_no(ok);
  });
}

void confounder_chain_claims(Suite& s) {
  const std::string f = "confounder_chain";
  s.graph(f, "backdoor paths", "A<-C1->Y, A<-C2<-C1->Y",
          [](const Dag& g) { return paths_text(g, backdoor_paths(g)); });
  s.graph(f, "A and Y d-separated given {}", "false",
          [](const Dag& g) { return yes_no(d_separated(g, NodeSet{g.exposure()}, NodeSet{g.outcome()}, {})); });
  s.graph(f, "removing edges into A leaves", "C1->C2, C1->Y, A->Y", [](const Dag& g) {
    const Digraph cut = remove_into(g, g.exposure());
    std::string out;
    for (const auto& [p, c] : cut.edges()) out += (out.empty() ? "" : ", ") + cut.name(p) + "->" + cut.name(c);
    return out;
  });
  s.graph(f, "{C2} is not sufficient", "false via A<-C1->Y", [](const Dag& g) {
    const AdjustmentVerdict v = is_sufficient(g, g.set_of({"C2"}));
    return yes_no(v.sufficient) + (v.open_backdoor_witness ? " via " + format_path(g, *v.open_backdoor_witness) : "");
  });
  s.graph(f, "minimally sufficient sets", "{C1}",
          [](const Dag& g) { return catalog_text(g, minimal_sufficient_sets(g)); });
  s.graph(f, "C1 and C2 under D2", "true,true", [](const Dag& g) {
    return yes_no(classify_d2(g, idx(g, "C1")).holds) + "," + yes_no(classify_d2(g, idx(g, "C2")).holds);
  });
  s.graph(f, "C2 blocks a backdoor path", "A<-C2<-C1->Y", [](const Dag& g) {
    const PathVerdict v = classify_d2(g, idx(g, "C2"));
    return v.witness ? format_path(g, *v.witness) : std::string("none");
  });
  s.graph(f, "C2 under D4", "false", [](const Dag& g) { return yes_no(classify_d4(g, idx(g, "C2")).holds); });
  s.graph(f, "D2 and Property 1", "holds",
          [](const Dag& g) { return property_text(g, check_property1(g, nullptr, DefinitionId::D2)); });
  s.graph(f, "D2 and Property 2A", "fails at C2",
          [](const Dag& g) { return property_text(g, check_property2a(g, nullptr, DefinitionId::D2)); });
  s.model(f, "D2 and Property 2B", "fails at C2",
          [](const DiscreteModel& m) { return property_text(m.dag(), check_property2b(m, DefinitionId::D2)); });
  s.model(f, "average causal effect", "1/4", [](const DiscreteModel& m) { return to_exact_string(ace(m)); });
  s.model(f, "standardized RD over {C1,C2}", "1/4",
          [](const DiscreteModel& m) { return to_exact_string(standardized_rd(m, m.dag().set_of({"C1", "C2"}))); });
  s.model(f, "standardized RD over {C1}", "1/4",
          [](const DiscreteModel& m) { return to_exact_string(standardized_rd(m, m.dag().set_of({"C1"}))); });
  s.model(f, "unadjusted RD, 3 decimals", "0.266",
          [](const DiscreteModel& m) { return to_decimal(standardized_rd(m, {})); });
  s.model(f, "standardized RD over {C2}, 3 decimals", "0.269",
          [](const DiscreteModel& m) { return to_decimal(standardized_rd(m, m.dag().set_of({"C2"}))); });
  s.model(f, "|bias| unadjusted and over {C2}, 3 decimals", "0.016,0.019", [](const DiscreteModel& m) {
    return to_decimal(abs_value(bias(m, {}))) + "," + to_decimal(abs_value(bias(m, m.dag().set_of({"C2"}))));
  });
  s.model(f, "bias over {C1}", "0", [](const DiscreteModel& m) { return to_exact_string(bias(m, m.dag().set_of({"C1"}))); });
  s.model(f, "C2 under D5", "false", [](const DiscreteModel& m) { return yes_no(classify_d5(m, idx(m.dag(), "C2")).holds); });
}

void alternative_sets_claims(Suite& s) {
  const std::string f = "alternative_sets";
  s.graph(f, "covariate pool", "{C1,C2}", [](const Dag& g) { return g.format_set(g.covariate_pool()); });
  s.graph(f, "parents of A", "{C2}", [](const Dag& g) { return g.format_set(g.parents(g.exposure())); });
  s.graph(f, "backdoor paths", "A<-C2<-C1->Y", [](const Dag& g) { return paths_text(g, backdoor_paths(g)); });
  s.graph(f, "{C1} is sufficient", "true",
          [](const Dag& g) { return yes_no(is_sufficient(g, g.set_of({"C1"})).sufficient); });
  s.graph(f, "the empty set is sufficient", "false", [](const Dag& g) { return yes_no(is_sufficient(g, {}).sufficient); });
  s.graph(f, "minimally sufficient sets", "{C1}, {C2}",
          [](const Dag& g) { return catalog_text(g, minimal_sufficient_sets(g)); });
  s.graph(f, "union of minimal sets", "{C1,C2} sufficient", [](const Dag& g) {
    const AdjustmentVerdict v = union_of_minimal(g);
    return g.format_set(v.set) + (v.sufficient ? " sufficient" : " insufficient");
  });
  s.graph(f, "C1 under D3, D4", "false,true", [](const Dag& g) {
    return yes_no(classify_d3(g, idx(g, "C1"))) + "," + yes_no(classify_d4(g, idx(g, "C1")).holds);
  });
  s.graph(f, "C2 under D4", "true with {C2}", [](const Dag& g) {
    const SetVerdict v = classify_d4(g, idx(g, "C2"));
    return v.holds ? "true with " + g.format_set(*v.witness) : std::string("false");
  });
  s.graph(f, "C2 under D3", "false", [](const Dag& g) { return yes_no(classify_d3(g, idx(g, "C2"))); });
  s.graph(f, "D3 and Property 1", "fails with S={}",
          [](const Dag& g) { return property_text(g, check_property1(g, nullptr, DefinitionId::D3)); });
  s.graph(f, "D3 and Property 2A", "holds",
          [](const Dag& g) { return property_text(g, check_property2a(g, nullptr, DefinitionId::D3)); });
  s.graph(f, "D4 and Property 1", "holds",
          [](const Dag& g) { return property_text(g, check_property1(g, nullptr, DefinitionId::D4)); });
  s.graph(f, "D4 and Property 2A", "holds",
          [](const Dag& g) { return property_text(g, check_property2a(g, nullptr, DefinitionId::D4)); });
  s.graph(f, "C2 is a confounder given L={C1}", "false",
          [](const Dag& g) { return yes_no(conditional_confounder(g, idx(g, "C2"), g.set_of({"C1"})).holds); });
  s.graph(f, "backward selection from {C1,C2}", "{C1}", [](const Dag& g) {
    return g.format_set(backward_select(IndependenceOracle::graphical(g), g.set_of({"C1", "C2"})).final_set);
  });
  s.graph(f, "forward selection from {C1,C2}", "{C1}", [](const Dag& g) {
    return g.format_set(forward_select(IndependenceOracle::graphical(g), g.set_of({"C1", "C2"})).final_set);
  });
  s.model(f, "C2 and Y independent given {A,C1}", "true", [](const DiscreteModel& m) {
    const Dag& g = m.dag();
    return yes_no(ci_test(m, g.set_of({"C2"}), NodeSet{g.outcome()}, g.set_of({"A", "C1"})));
  });
  s.model(f, "C1 is a surrogate confounder", "false",
          [](const DiscreteModel& m) { return yes_no(surrogate_confounder(m, idx(m.dag(), "C1"))); });
  s.model(f, "implication lattice holds for every covariate", "true", [](const DiscreteModel& m) {
    bool ok = true;
    for (const ConfounderReport& r : classify_all(m.dag(), &m)) ok = ok && r.lattice_ok;
    return yes_no(ok);
  });
}

void single_confounder_claims(Suite& s) {
  const std::string f = "single_confounder";
  s.graph(f, "minimally sufficient sets", "{C1}",
          [](const Dag& g) { return catalog_text(g, minimal_sufficient_sets(g)); });
  s.graph(f, "C1 under D3", "true", [](const Dag& g) { return yes_no(classify_d3(g, idx(g, "C1"))); });
  s.graph(f, "D3 and Property 1", "holds",
          [](const Dag& g) { return property_text(g, check_property1(g, nullptr, DefinitionId::D3)); });
}

void proxy_confounder_claims(Suite& s) {
  const std::string f = "proxy_confounder";
  s.graph(f, "minimally sufficient sets", "{C1}",
          [](const Dag& g) { return catalog_text(g, minimal_sufficient_sets(g)); });
  s.graph(f, "C2 under D1", "true with X={}",
          [](const Dag& g) { return d1_text(classify_d1_graphical(g, idx(g, "C2")), g); });
  s.graph(f, "C2 under D2", "false", [](const Dag& g) { return yes_no(classify_d2(g, idx(g, "C2")).holds); });
  s.graph(f, "C2 under D4", "false", [](const Dag& g) { return yes_no(classify_d4(g, idx(g, "C2")).holds); });
  s.graph(f, "no X makes X+C2 sufficient with X insufficient", "none", [](const Dag& g) {
    const auto x = completes_sufficient_set(g, idx(g, "C2"));
    return x ? g.format_set(*x) : std::string("none");
  });
  s.model(f, "C2 under D5", "true with X={}", [](const DiscreteModel& m) {
    const BiasVerdict v = classify_d5(m, idx(m.dag(), "C2"));
    return v.holds ? "true with X=" + m.dag().format_set(*v.witness) : std::string("false");
  });
  s.model(f, "C2 is a surrogate confounder", "true",
          [](const DiscreteModel& m) { return yes_no(surrogate_confounder(m, idx(m.dag(), "C2"))); });
  s.model(f, "D5 and Property 2A", "fails at C2",
          [](const DiscreteModel& m) { return property_text(m.dag(), check_property2a(m.dag(), &m, DefinitionId::D5)); });
  s.model(f, "D5 and Property 2B", "holds",
          [](const DiscreteModel& m) { return property_text(m.dag(), check_property2b(m, DefinitionId::D5)); });
  s.model(f, "implication lattice holds for every covariate", "true", [](const DiscreteModel& m) {
    bool ok = true;
    for (const ConfounderReport& r : classify_all(m.dag(), &m)) ok = ok && r.lattice_ok;
    return yes_no(ok);
  });
}

void cancellation_claims(Suite& s) {
  const std::string f = "cancellation";
  auto cond_mean = [](const DiscreteModel& m, const char* a) {
    return to_exact_string(cond_expectation(m, m.dag().outcome(), m.assignment({{"A", a}})));
  };
  s.model(f, "E(Y_1)", "3/10", [](const DiscreteModel& m) { return to_exact_string(interventional_mean(m, 1)); });
  s.model(f, "E(Y_0)", "1/5", [](const DiscreteModel& m) { return to_exact_string(interventional_mean(m, 0)); });
  s.model(f, "E(Y|A=1)", "2/5", [=](const DiscreteModel& m) { return cond_mean(m, "1"); });
  s.model(f, "E(Y|A=0)", "3/10", [=](const DiscreteModel& m) { return cond_mean(m, "0"); });
  s.model(f, "P(C=1,A=1,Y=1)", "3/16", [](const DiscreteModel& m) {
    return to_exact_string(joint_probability(m, m.assignment({{"C", "1"}, {"A", "1"}, {"Y", "1"}})));
  });
  s.model(f, "bias without adjustment", "0", [](const DiscreteModel& m) { return to_exact_string(bias(m, {})); });
  s.model(f, "Y_a independent of A given {}", "false",
          [](const DiscreteModel& m) { return yes_no(cf_unconfounded(m, {})); });
  s.model(f, "Y_a independent of A given {C}", "true",
          [](const DiscreteModel& m) { return yes_no(cf_unconfounded(m, m.dag().set_of({"C"}))); });
  s.model(f, "C and A independent", "false", [](const DiscreteModel& m) {
    return yes_no(ci_test(m, m.dag().set_of({"C"}), NodeSet{m.dag().exposure()}, {}));
  });
  s.model(f, "C under D5, D6", "false,false", [](const DiscreteModel& m) {
    const NodeIndex c = idx(m.dag(), "C");
    return yes_no(classify_d5(m, c).holds) + "," + yes_no(classify_d6(m, c).holds);
  });
  s.model(f, "C under distributional D1", "true with X={}", [](const DiscreteModel& m) {
    const SetVerdict v = classify_d1_numeric(m, idx(m.dag(), "C"));
    return v.holds ? "true with X=" + m.dag().format_set(*v.witness) : std::string("false");
  });
  s.model(f, "D5 and Property 1", "fails with S={}",
          [](const DiscreteModel& m) { return property_text(m.dag(), check_property1(m.dag(), &m, DefinitionId::D5)); });
  s.model(f, "D6 and Property 1", "fails with S={}",
          [](const DiscreteModel& m) { return property_text(m.dag(), check_property1(m.dag(), &m, DefinitionId::D6)); });
  s.model(f, "D4 and Property 1", "holds",
          [](const DiscreteModel& m) { return property_text(m.dag(), check_property1(m.dag(), &m, DefinitionId::D4)); });
}

}  // namespace

std::vector<SuiteRow> run_paper_suite(const Registry& registry) {
  Suite s(registry);
  m_bias_claims(s);
  confounder_chain_claims(s);
  alternative_sets_claims(s);
  single_confounder_claims(s);
  proxy_confounder_claims(s);
  cancellation_claims(s);
  for (const RegistryEntry& e : registry.entries) {
    s.graph(e.name, "D4 and Property 1", "holds",
            [](const Dag& g) { return property_text(g, check_property1(g, nullptr, DefinitionId::D4)); });
    s.graph(e.name, "union of minimal sets is sufficient", "true",
            [](const Dag& g) { return yes_no(union_of_minimal(g).sufficient); });
  }
  return std::move(s.rows);
}

}  // namespace confound
