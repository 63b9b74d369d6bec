#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "confound/discrete_model.hpp"
#include "confound/graph.hpp"

namespace confound {

/// Worked examples shipped under fixtures/ as <name>.graph plus an optional
/// <name>.json model.
///   m_bias             C1->A, C1->C3, C2->C3, C2->Y, A->Y
///   confounder_chain   C1->C2, C1->A, C2->A, C1->Y, A->Y (binary CPTs given
///                      in closed form)
///   alternative_sets   C1->C2, C2->A, C1->Y, A->Y
///   single_confounder  C1->A, C1->Y, A->Y
///   proxy_confounder   C1->C2, C1->A, C1->Y, A->Y
///   cancellation       C->A, C->Y, A->Y (binary CPTs given in closed form)
struct RegistryEntry {
  std::string name;
  Dag dag;
  std::optional<DiscreteModel> model;
};

class Registry {
 public:
  std::vector<RegistryEntry> entries;

  /// nullptr when absent.
  const RegistryEntry* find(const std::string& name) const;
};

/// Names the suite expects, in suite order.
const std::vector<std::string>& fixture_names();

/// Built from the fixture files compiled into the library.
Registry builtin_registry();
/// Reads <dir>/<name>.graph and, when present, <dir>/<name>.json for every
/// fixture name. Missing graphs are skipped; the suite then reports the
/// affected claims as failures.
Registry load_registry(const std::string& dir);

/// Raw text of an embedded fixture file ("m_bias.graph"); nullopt if
/// absent.
std::optional<std::string> embedded_fixture(const std::string& file);

struct SuiteRow {
  std::string fixture;
  std::string claim;
  std::string expected;
  std::string observed;
  bool pass = false;
};

/// Re-derives every pinned claim about the registry examples. Evaluation
/// errors become failing rows.
std::vector<SuiteRow> run_paper_suite(const Registry& registry);

/// Draws random_model(dag) candidates from Rng(seed) until `accept` holds;
/// returns the candidate and its zero-based attempt number. Throws
/// InvalidConfig after `max_attempts`.
std::pair<DiscreteModel, std::size_t> search_model(const Dag& dag, std::uint64_t seed,
                                                   const std::function<bool(const DiscreteModel&)>& accept,
                                                   std::size_t max_attempts = 10000);

/// Acceptance tests used to pick the generated fixture models.
bool proxy_model_acceptable(const DiscreteModel& model);
bool m_bias_model_acceptable(const DiscreteModel& model);
bool alternative_sets_model_acceptable(const DiscreteModel& model);

}  // namespace confound
