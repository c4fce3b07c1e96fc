#pragma once

// JSON views of every report type. Field names are snake_case and stable.

#include <json.hpp>

#include "affres/construction.hpp"
#include "affres/experiments.hpp"
#include "affres/resistance.hpp"

namespace affres {

using Json = nlohmann::ordered_json;

/// Sets listed in full up to this many elements.
inline constexpr u64 kMaxListedElements = 10000;

Json to_json(const Epsilon& eps);
Json to_json(const BigCount& count);
Json to_json(const FpSubset& set, bool list_elements = true);
Json to_json(const NormEstimate& est);
Json to_json(const DefectReport& report);
Json to_json(const ConstructionResult& result, bool list_elements = true);
Json to_json(const ResistanceReport& report, bool list_elements = true);
Json to_json(const ExpansionProfile& profile);
Json to_json(const TrialRecord& record);
Json to_json(const LmrRow& row, bool include_records = false);
Json to_json(const OracleResult& result);
Json to_json(const ScanResult& scan);

Epsilon epsilon_from_json(const Json& j);
FpSubset subset_from_json(const Json& j);

}  // namespace affres
