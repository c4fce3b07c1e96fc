#include "affres/report_json.hpp"

#include "affres/errors.hpp"

namespace affres {

Json to_json(const Epsilon& eps) {
  return Json{{"num", eps.num()}, {"den", eps.den()}, {"value", eps.value()}};
}

Json to_json(const BigCount& count) {
  return Json{{"overflow", count.is_overflow()}, {"value", count.to_string()}};
}

Json to_json(const FpSubset& set, bool list_elements) {
  Json j{{"p", set.modulus()}, {"size", set.size()}};
  if (list_elements) j["elements"] = set.elements();
  return j;
}

Json to_json(const NormEstimate& est) {
  return Json{{"value", est.value},
              {"tolerance", est.tolerance},
              {"iterations_used", est.iterations},
              {"converged", est.converged}};
}

Json to_json(const DefectReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries)
    entries.push_back(Json{{"a", e.a.value}, {"mult_defect", e.mult_defect}, {"add_defect", e.add_defect}});
  return Json{{"epsilon", to_json(report.epsilon)},
              {"set_size", report.set_size},
              {"max_defect", report.max_defect()},
              {"entries", std::move(entries)},
              {"pass", report.pass}};
}

Json to_json(const ConstructionResult& result, bool list_elements) {
  return Json{{"P", to_json(result.P, list_elements)},
              {"Q", to_json(result.Q, list_elements)},
              {"T_size", result.T.size()},
              {"X", to_json(result.X, list_elements)},
              {"predicted_bound", to_json(result.predicted_bound)},
              {"structural_bound", to_json(result.structural_bound)},
              {"injective_P", result.injective_P},
              {"injective_Q", result.injective_Q},
              {"defects", to_json(result.defects)}};
}

Json to_json(const ResistanceReport& report, bool list_elements) {
  Json gens = Json::array();
  for (const auto& g : report.gens) gens.push_back(AffineGroup::format(g));
  Json a = Json::array();
  for (FpElem x : report.a_values) a.push_back(x.value);
  Json j{{"generators", std::move(gens)},
         {"epsilon_target", to_json(report.epsilon_target)},
         {"epsilon_internal", to_json(report.epsilon_internal)},
         {"A", std::move(a)},
         {"trivial", report.trivial},
         {"size_bound", to_json(report.size_bound)},
         {"admissible_k", report.admissible_k}};
  j["X"] = report.X ? to_json(*report.X, list_elements) : Json(nullptr);
  j["defects"] = report.defects ? to_json(*report.defects) : Json(nullptr);
  j["shift_defects"] = report.shift_defects;
  j["half_condition"] = report.half_condition;
  j["rayleigh_bound"] = report.rayleigh_bound;
  j["guaranteed_floor"] = report.guaranteed_floor;
  j["op_norm"] = to_json(report.op_norm);
  j["certified"] = report.certified;
  return j;
}

Json to_json(const ExpansionProfile& profile) {
  return Json{{"p", profile.p},
              {"character_norms", profile.character_norms},
              {"standard_norm", to_json(profile.standard_norm)},
              {"max_norm", profile.max_norm},
              {"expansion_epsilon", profile.expansion_epsilon}};
}

Json to_json(const TrialRecord& record) {
  return Json{{"trial", record.trial}, {"seed", record.seed}, {"max_norm", record.max_norm}};
}

Json to_json(const LmrRow& row, bool include_records) {
  Json j{{"n", row.n},
         {"k", row.k},
         {"trials", row.trials},
         {"frequency_unit_norm", row.frequency_unit_norm},
         {"mean_norm", row.mean_norm},
         {"max_norm", row.max_norm}};
  if (include_records) {
    Json recs = Json::array();
    for (const auto& r : row.records) recs.push_back(to_json(r));
    j["records"] = std::move(recs);
  }
  return j;
}

Json to_json(const OracleResult& result) {
  return Json{{"min_size", result.min_size},
              {"witness", result.witness ? Json(result.witness->elements()) : Json(nullptr)},
              {"nodes_searched", result.nodes_searched},
              {"exhausted", result.exhausted}};
}

Json to_json(const ScanResult& scan) {
  Json rows = Json::array();
  for (const auto& r : scan.rows) rows.push_back(Json{{"A", r.a_values}, {"oracle", to_json(r.result)}});
  return Json{{"rows", std::move(rows)}, {"max_min_size", scan.max_min_size}, {"complete", scan.complete}};
}

Epsilon epsilon_from_json(const Json& j) { return Epsilon(j.at("num").get<u64>(), j.at("den").get<u64>()); }

FpSubset subset_from_json(const Json& j) {
  if (!j.contains("elements")) throw InvalidArgument("set was not listed in the report");
  const auto elems = j.at("elements").get<std::vector<u64>>();
  return FpSubset::from_elements(j.at("p").get<u64>(), elems);
}

}  // namespace affres
