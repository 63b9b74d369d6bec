// confound: command-line front end for the confounder library.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "confound/adjustment.hpp"
#include "confound/commands.hpp"
#include "confound/definitions.hpp"
#include "confound/error.hpp"
#include "confound/fuzz.hpp"
#include "confound/io.hpp"
#include "confound/properties.hpp"
#include "confound/registry.hpp"
#include "confound/report.hpp"
#include "confound/selection.hpp"

namespace {

using namespace confound;

enum Exit { kOk = 0, kOther = 1, kParse = 2, kSize = 3, kMissingModel = 4, kPositivity = 5, kConfig = 6 };

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::CycleDetected:
    case ErrorKind::UnknownNode:
    case ErrorKind::DuplicateEdge:
    case ErrorKind::SelfLoop:
    case ErrorKind::MissingExposureOrOutcome:
    case ErrorKind::InvalidModel:
    case ErrorKind::UnknownState:
    case ErrorKind::NonNumericState:
    case ErrorKind::NonBinaryExposure:
      return kParse;
    case ErrorKind::SizeLimit:
      return kSize;
    case ErrorKind::MissingModel:
      return kMissingModel;
    case ErrorKind::PositivityViolation:
      return kPositivity;
    case ErrorKind::InvalidConfig:
    case ErrorKind::NotACovariate:
    case ErrorKind::NonCovariateInSet:
    case ErrorKind::OverlappingSets:
      return kConfig;
    default:
      return kOther;
  }
}

struct Common {
  std::string graph;
  std::string model;
  std::string format = "text";
  bool exact = false;
};

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

void add_inputs(CLI::App* cmd, Common& c) {
  cmd->add_option("graph", c.graph, "Graph file")->required();
  cmd->add_option("model", c.model, "Model file (JSON)");
}

struct Inputs {
  Dag dag;
  std::optional<DiscreteModel> model;
  const DiscreteModel* model_ptr() const { return model ? &*model : nullptr; }
};

Inputs load(const Common& c) {
  Inputs in{read_graph_file(c.graph), std::nullopt};
  if (!c.model.empty()) in.model.emplace(read_model_file(c.model, in.dag));
  return in;
}

ReportStyle style(const Common& c) {
  ReportStyle s;
  s.exact = c.exact;
  return s;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ------------------------------------------------------------- commands

int cmd_minimal_sets(const Common& c) {
  const Dag dag = read_graph_file(c.graph);
  const MinimalSetCatalog cat = minimal_sufficient_sets(dag);
  const AdjustmentVerdict u = is_sufficient(dag, cat.set_union);
  if (c.format == "json")
    print_json(catalog_json(dag, cat, u));
  else
    std::cout << catalog_text(dag, cat, u) << "\n";
  return kOk;
}

int cmd_classify(const Common& c, const std::string& variable, const std::string& defs) {
  const Inputs in = load(c);
  const ClassifyResult r = run_classify(in.dag, in.model_ptr(), variable, defs);
  if (c.format == "json")
    print_json(classify_json(in.dag, r, style(c)));
  else
    std::cout << classify_text(in.dag, r, style(c));
  return kOk;
}

int cmd_properties(const Common& c, const std::string& def, const std::string& variable) {
  const Inputs in = load(c);
  const PropertiesResult r = run_properties(in.dag, in.model_ptr(), def, variable);
  if (c.format == "json")
    print_json(properties_json(in.dag, r, style(c)));
  else
    std::cout << properties_text(in.dag, r, style(c));
  return kOk;
}

int cmd_paper_suite(const std::string& fixtures, const std::string& format) {
  const Registry reg = fixtures.empty() ? builtin_registry() : load_registry(fixtures);
  const std::vector<SuiteRow> rows = run_paper_suite(reg);
  if (format == "json")
    print_json(suite_json(rows));
  else
    std::cout << suite_text(rows);
  for (const SuiteRow& r : rows)
    if (!r.pass) return kOther;
  return kOk;
}

int cmd_fuzz(const FuzzConfig& config, const std::string& format) {
  const FuzzReport report = fuzz(config);
  if (format == "json")
    print_json(fuzz_json(report));
  else
    std::cout << fuzz_text(report);
  return report.hard_failures() == 0 ? kOk : kOther;
}

int cmd_select(const Common& c, const std::string& mode, const std::string& set, const std::string& keep,
               const std::string& oracle) {
  const Inputs in = load(c);
  const SelectResult r = run_select(in.dag, in.model_ptr(), mode, set, keep, oracle);
  if (c.format == "json")
    print_json(select_json(in.dag, r));
  else
    std::cout << select_text(in.dag, r);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Confounder definitions, adjustment sets and property checks on causal diagrams"};
  app.require_subcommand(1);

  Common mc;
  auto* minimal = app.add_subcommand("minimal-sets", "List minimally sufficient adjustment sets");
  minimal->add_option("graph", mc.graph, "Graph file")->required();
  add_format(minimal, mc);

  Common cc;
  std::string variable, defs;
  auto* classify_cmd = app.add_subcommand("classify", "Classify covariates under each definition");
  add_inputs(classify_cmd, cc);
  classify_cmd->add_option("--variable", variable, "Only this covariate");
  classify_cmd->add_option("--defs", defs, "Comma-separated definitions, e.g. D1,D4");
  classify_cmd->add_flag("--exact", cc.exact, "Show exact rationals");
  add_format(classify_cmd, cc);

  Common pc;
  std::string def, pvariable;
  auto* props = app.add_subcommand("properties", "Check the properties for one definition");
  add_inputs(props, pc);
  props->add_option("--def", def, "Definition D1..D6")->required();
  props->add_option("--variable", pvariable, "Check 2A/2B for this covariate only");
  props->add_flag("--exact", pc.exact, "Show exact rationals");
  add_format(props, pc);

  std::string fixtures, suite_format = "text";
  auto* suite = app.add_subcommand("paper-suite", "Re-derive every pinned claim about the worked examples");
  suite->add_option("--fixtures", fixtures, "Directory of fixture files (default: built-in copies)");
  suite->add_option("--format", suite_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  FuzzConfig fc;
  std::uint64_t seed = 0;
  bool no_models = false, no_selection = false;
  std::string fuzz_format = "text";
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Check the theorems on random diagrams and models");
  auto* seed_opt = fuzz_cmd->add_option("--seed", seed, "Random seed")->required();
  fuzz_cmd->add_option("--nodes", fc.n_nodes, "Maximum nodes per diagram (2..10)");
  fuzz_cmd->add_option("--trials", fc.n_trials, "Number of random diagrams");
  fuzz_cmd->add_option("--edge-prob", fc.edge_prob, "Edge probability");
  fuzz_cmd->add_flag("--no-models", no_models, "Skip the model-based checks");
  fuzz_cmd->add_flag("--no-selection", no_selection, "Skip the selection checks");
  fuzz_cmd->add_option("--format", fuzz_format, "Output format")->check(CLI::IsMember({"text", "json"}));

  Common sc;
  std::string mode, set_text, keep_text, oracle_name;
  auto* select = app.add_subcommand("select", "Run a covariate selection procedure");
  add_inputs(select, sc);
  select->add_option("--mode", mode, "Procedure")->required()->check(CLI::IsMember({"backward", "forward", "robins"}));
  select->add_option("--set", set_text, "Comma-separated covariates (S, or S2 for robins)");
  select->add_option("--keep", keep_text, "Comma-separated S1 for robins");
  select->add_option("--oracle", oracle_name, "Independence oracle (default: numeric with a model)")
      ->check(CLI::IsMember({"graphical", "numeric"}));
  add_format(select, sc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*minimal) return cmd_minimal_sets(mc);
    if (*classify_cmd) return cmd_classify(cc, variable, defs);
    if (*props) return cmd_properties(pc, def, pvariable);
    if (*suite) return cmd_paper_suite(fixtures, suite_format);
    if (*fuzz_cmd) {
      if (*seed_opt) fc.seed = seed;
      fc.with_models = !no_models;
      fc.with_selection = !no_selection;
      return cmd_fuzz(fc, fuzz_format);
    }
    if (*select) return cmd_select(sc, mode, set_text, keep_text, oracle_name);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kOther;
  }
  return kOther;
}
