// Python bindings. Structured results cross the boundary as JSON text and
// are decoded by the package wrapper.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "confound/commands.hpp"
#include "confound/error.hpp"
#include "confound/fuzz.hpp"
#include "confound/io.hpp"
#include "confound/registry.hpp"

namespace py = pybind11;
using namespace confound;

namespace {

struct Inputs {
  Dag dag;
  std::optional<DiscreteModel> model;
  const DiscreteModel* ptr() const { return model ? &*model : nullptr; }
};

Inputs load(const std::string& graph, const std::optional<std::string>& model) {
  Inputs in{parse_graph(graph), std::nullopt};
  if (model) in.model.emplace(parse_model(*model, in.dag));
  return in;
}

ReportStyle style_of(bool exact) {
  ReportStyle s;
  s.exact = exact;
  return s;
}

std::string minimal_sets(const std::string& graph) {
  const Dag dag = parse_graph(graph);
  const MinimalSetCatalog cat = minimal_sufficient_sets(dag);
  return catalog_json(dag, cat, is_sufficient(dag, cat.set_union)).dump();
}

std::string classify_cmd(const std::string& graph, const std::optional<std::string>& model,
                         const std::string& variable, const std::string& defs, bool exact) {
  const Inputs in = load(graph, model);
  return classify_json(in.dag, run_classify(in.dag, in.ptr(), variable, defs), style_of(exact)).dump();
}

std::string properties_cmd(const std::string& graph, const std::optional<std::string>& model,
                           const std::string& definition, const std::string& variable, bool exact) {
  const Inputs in = load(graph, model);
  return properties_json(in.dag, run_properties(in.dag, in.ptr(), definition, variable), style_of(exact)).dump();
}

std::string select_cmd(const std::string& graph, const std::optional<std::string>& model, const std::string& mode,
                       const std::string& set, const std::string& keep, const std::string& oracle) {
  const Inputs in = load(graph, model);
  return select_json(in.dag, run_select(in.dag, in.ptr(), mode, set, keep, oracle)).dump();
}

std::string suite_cmd(const std::optional<std::string>& fixtures) {
  return suite_json(run_paper_suite(fixtures ? load_registry(*fixtures) : builtin_registry())).dump();
}

std::string fuzz_cmd(std::uint64_t seed, std::size_t nodes, std::size_t trials, double edge_prob, bool models,
                     bool selection) {
  FuzzConfig c;
  c.seed = seed;
  c.n_nodes = nodes;
  c.n_trials = trials;
  c.edge_prob = edge_prob;
  c.with_models = models;
  c.with_selection = selection;
  return fuzz_json(fuzz(c)).dump();
}

bool d_separated_cmd(const std::string& graph, const std::string& a, const std::string& b, const std::string& z) {
  const Dag dag = parse_graph(graph);
  return d_separated(dag, parse_node_list(dag, a), parse_node_list(dag, b), parse_node_list(dag, z));
}

std::string effects_cmd(const std::string& graph, const std::string& model, const std::string& x) {
  const Inputs in = load(graph, model);
  const DiscreteModel& m = *in.model;
  const NodeSet s = parse_node_list(in.dag, x);
  return Json{{"ace", rational_json(ace(m))},
              {"standardized_rd", rational_json(standardized_rd(m, s))},
              {"bias", rational_json(bias(m, s))},
              {"cf_unconfounded", cf_unconfounded(m, s)}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_confound, m) {
  m.doc() = "Confounder definitions, adjustment sets and property checks on causal diagrams";

  // Raised with args (kind, message).
  static PyObject* error = py::exception<Error>(m, "ConfoundError").inc_ref().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error, py::make_tuple(std::string(to_string(e.kind())), std::string(e.what())).ptr());
    }
  });

  m.def("minimal_sets", &minimal_sets, py::arg("graph"));
  m.def("classify", &classify_cmd, py::arg("graph"), py::arg("model") = py::none(), py::arg("variable") = "",
        py::arg("defs") = "", py::arg("exact") = false);
  m.def("properties", &properties_cmd, py::arg("graph"), py::arg("model") = py::none(), py::arg("definition"),
        py::arg("variable") = "", py::arg("exact") = false);
  m.def("select", &select_cmd, py::arg("graph"), py::arg("model") = py::none(), py::arg("mode"), py::arg("set") = "",
        py::arg("keep") = "", py::arg("oracle") = "");
  m.def("paper_suite", &suite_cmd, py::arg("fixtures") = py::none());
  m.def("fuzz", &fuzz_cmd, py::arg("seed"), py::arg("nodes") = 8, py::arg("trials") = 100,
        py::arg("edge_prob") = 0.4, py::arg("models") = true, py::arg("selection") = true);
  m.def("d_separated", &d_separated_cmd, py::arg("graph"), py::arg("a"), py::arg("b"), py::arg("z") = "");
  m.def("effects", &effects_cmd, py::arg("graph"), py::arg("model"), py::arg("adjust") = "");
  m.def("fixture", [](const std::string& file) { return embedded_fixture(file); }, py::arg("file"));
}
