#pragma once

#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "confound/adjustment.hpp"
#include "confound/definitions.hpp"
#include "confound/fuzz.hpp"
#include "confound/properties.hpp"
#include "confound/registry.hpp"
#include "confound/selection.hpp"

namespace confound {

using Json = nlohmann::ordered_json;

/// Rationals are rendered as {"exact": "4/15", "decimal": "0.266"}.
struct ReportStyle {
  int digits = 3;
  Rounding rounding = Rounding::TowardZero;
  /// Text output shows exact rationals instead of decimals.
  bool exact = false;
};

Json rational_json(const Rational& r, const ReportStyle& style = {});
Json set_json(const Dag& dag, NodeSet s);
Json path_json(const Dag& dag, const Path& p);

Json catalog_json(const Dag& dag, const MinimalSetCatalog& cat, const AdjustmentVerdict& union_verdict);
Json verdict_json(const Dag& dag, const AdjustmentVerdict& v);
/// Only the definitions in `defs` are listed; the lattice fields always
/// reflect the full report.
Json report_json(const Dag& dag, const ConfounderReport& r, const std::set<DefinitionId>& defs,
                 const ReportStyle& style = {});
Json property_json(const Dag& dag, const PropertyVerdict& v, const ReportStyle& style = {});
Json trace_json(const Dag& dag, const SelectionTrace& t, OracleKind oracle);
Json robins_json(const Dag& dag, const RobinsResult& r, NodeSet s1, NodeSet s2, OracleKind oracle);
Json fuzz_json(const FuzzReport& r);
Json suite_json(const std::vector<SuiteRow>& rows);

/// "{C1}, {C2}; union {C1,C2} sufficient"
std::string catalog_text(const Dag& dag, const MinimalSetCatalog& cat, const AdjustmentVerdict& union_verdict);
std::string reports_text(const Dag& dag, const std::vector<ConfounderReport>& reports,
                         const std::set<DefinitionId>& defs, const ReportStyle& style = {});
std::string property_text(const Dag& dag, const PropertyVerdict& v, const ReportStyle& style = {});
std::string trace_text(const Dag& dag, const SelectionTrace& t);
std::string robins_text(const Dag& dag, const RobinsResult& r);
std::string fuzz_text(const FuzzReport& r);
std::string suite_text(const std::vector<SuiteRow>& rows);

}  // namespace confound
