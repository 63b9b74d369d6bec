#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confound/definitions.hpp"

namespace confound {

struct FuzzConfig {
  /// Upper bound on nodes per trial, 2..10; each trial draws its size
  /// uniformly from [2, n_nodes].
  std::size_t n_nodes = 8;
  double edge_prob = 0.4;
  std::size_t n_trials = 100;
  /// Mandatory.
  std::optional<std::uint64_t> seed;
  /// Attach a random binary model to every trial of at most
  /// model_max_nodes nodes.
  bool with_models = true;
  std::size_t model_max_nodes = 8;
  /// Selection and Robins checks on every sufficient set.
  bool with_selection = true;
};

/// Throws InvalidConfig for a missing seed or out-of-range values.
void validate(const FuzzConfig& config);

struct FuzzFailure {
  std::size_t trial = 0;
  std::string check;
  std::string detail;
};

/// Counts for the assertions that must never fail (`hard`) and for
/// phenomena that are permitted and only tallied (`observed`).
struct FuzzReport {
  FuzzConfig config;
  std::size_t trials = 0;
  std::size_t model_trials = 0;
  std::size_t covariates_classified = 0;
  std::size_t sufficient_sets_checked = 0;

  /// Check name -> failures. Every hard check appears, zero or not.
  std::map<std::string, std::size_t> hard;
  /// Observation name -> count.
  std::map<std::string, std::size_t> observed;
  /// Typical implication ("D2=>D1") -> covariates where it failed.
  std::map<std::string, std::size_t> typical_failures;
  /// First few hard failures in trial order.
  std::vector<FuzzFailure> failures;

  std::size_t hard_failures() const;
};

inline constexpr std::size_t kMaxRecordedFailures = 20;

/// Hard check names.
namespace fuzz_check {
inline constexpr const char* kUnionSufficient = "union_of_minimal_sufficient";
inline constexpr const char* kMinimalInAncestors = "minimal_sets_within_ancestors";
inline constexpr const char* kGraphLattice = "graph_lattice";
inline constexpr const char* kModelLattice = "model_lattice";
inline constexpr const char* kConditionalReduces = "conditional_given_empty_equals_d4";
inline constexpr const char* kProperty1D1 = "property1_d1";
inline constexpr const char* kProperty1D2 = "property1_d2";
inline constexpr const char* kProperty1D4 = "property1_d4";
inline constexpr const char* kBridge = "sufficient_implies_cf_unconfounded";
inline constexpr const char* kGFormula = "gformula_equals_ace";
inline constexpr const char* kBackward = "backward_selection_sufficient";
inline constexpr const char* kForward = "forward_selection_sufficient";
inline constexpr const char* kRobins = "robins_reduction_sound";
}  // namespace fuzz_check

/// Observation names.
namespace fuzz_observation {
inline constexpr const char* kFaithfulness = "d1_graphical_numeric_disagree";
inline constexpr const char* kConverseBridge = "cf_unconfounded_but_insufficient";
inline constexpr const char* kCompletionDefinitionP1 = "completion_definition_fails_property1";
inline constexpr const char* kSurrogates = "surrogate_confounders";
}  // namespace fuzz_observation

FuzzReport fuzz(const FuzzConfig& config);

}  // namespace confound
