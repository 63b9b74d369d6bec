#pragma once

#include <string>
#include <string_view>

#include "confound/discrete_model.hpp"
#include "confound/graph.hpp"

namespace confound {

/// Graph files hold one statement per line:
///   # comment
///   node <name> [pre|exposure|outcome]
///   edge <parent> <child>
/// with exactly one exposure and one outcome. When any node is marked `pre`
/// the covariate pool is restricted to the marked nodes. Errors carry
/// "<source>:<line>:" prefixes; malformed lines throw Parse.
Dag parse_graph(std::string_view text, std::string_view source = "<graph>");
Dag read_graph_file(const std::string& path);
std::string write_graph(const Dag& dag);

/// Model files are JSON:
///   {"states": {"C": ["0","1"], ...},
///    "cpts": {"A": {"parents": ["C"], "table": {"0": ["3/4","1/4"], "1": [...]}}, ...}}
/// Table keys join parent states with commas in the listed parent order
/// ("" for parentless nodes); entries are "p/q" or finite decimal strings.
/// Throws Parse for malformed JSON, InvalidModel for structural mismatches.
DiscreteModel parse_model(std::string_view json_text, const Dag& dag, std::string_view source = "<model>");
DiscreteModel read_model_file(const std::string& path, const Dag& dag);
/// Exact entries, parents in graph index order.
std::string write_model(const DiscreteModel& model);

/// Whole file; throws Parse when unreadable.
std::string read_text_file(const std::string& path);

}  // namespace confound
