#pragma once

// JSON forms of the report types. Exact integer numerators and rational
// values ("p/q" strings) travel next to the floating-point values.

#include <json.hpp>

#include "bell/cascade.hpp"
#include "bell/feasibility.hpp"
#include "bell/matching.hpp"
#include "bell/singlet.hpp"
#include "bell/streams.hpp"

namespace bell {

void to_json(nlohmann::json& j, const CorrelationValue& v);
void to_json(nlohmann::json& j, const IdentityVerdict& v);
void to_json(nlohmann::json& j, const InequalityEvaluation& v);

void to_json(nlohmann::json& j, const SourceConfig& c);
void from_json(const nlohmann::json& j, SourceConfig& c);

void to_json(nlohmann::json& j, const CascadeConfig& c);
void from_json(const nlohmann::json& j, CascadeConfig& c);

/// Includes row_sources when `with_sources` is set; they are large.
nlohmann::json match_result_json(const MatchResult& m, bool with_sources = true);
void to_json(nlohmann::json& j, const OverdeterminationReport& r);
void to_json(nlohmann::json& j, const CorrelationReport& r);

void to_json(nlohmann::json& j, const Facet& f);
void to_json(nlohmann::json& j, const FeasibilityResult& r);
void to_json(nlohmann::json& j, const CorrelationBounds& b);
void to_json(nlohmann::json& j, const ScanSummary& s);

/// Pairwise correlations and identity/inequality evaluations of an aligned set.
nlohmann::json aligned_set_report(const AlignedSet& set);

}  // namespace bell
