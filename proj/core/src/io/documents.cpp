#include <fstream>
#include <sstream>

#include "osm/io.hpp"

namespace osm::io {

namespace {

Json school_or_null(const Instance& instance, SchoolIndex s) {
  return s == kUnassigned ? Json(nullptr) : Json(instance.school_id(s).value);
}

Json student_list(const Instance& instance, const std::set<StudentIndex>& students) {
  Json out = Json::array();
  for (StudentIndex i : students) out.push_back(instance.student_id(i).value);
  return out;
}

Json school_list(const Instance& instance, const std::set<SchoolIndex>& schools) {
  Json out = Json::array();
  for (SchoolIndex s : schools) out.push_back(school_or_null(instance, s));
  return out;
}

Json difference_json(const ReceivableSet& set) {
  Json profile;
  for (const auto& [school, diff] : set.differences) profile[school.value] = to_decimal_string(diff);
  Json receivable = Json::array();
  for (const auto& school : set.schools) receivable.push_back(school.value);
  Json out;
  out["difference_profile"] = std::move(profile);
  out["receivable_set"] = std::move(receivable);
  return out;
}

}  // namespace

Json matching_json(const Instance& instance, const Matching& matching) {
  matching.check_fits(instance);
  Json out = Json::object();
  for (StudentIndex i = 0; i < matching.size(); ++i) {
    out[instance.student_id(i).value] = school_or_null(instance, matching[i]);
  }
  return out;
}

Matching parse_matching(const Instance& instance, const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidMatching(std::string("matching document is not valid JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("matching")) doc = doc["matching"];
  if (!doc.is_object()) throw InvalidMatching("matching must be an object of student -> school");
  std::map<std::string, std::optional<std::string>> by_id;
  for (const auto& [student, school] : doc.items()) {
    if (school.is_null()) {
      by_id[student] = std::nullopt;
    } else if (school.is_string()) {
      by_id[student] = school.get<std::string>();
    } else {
      throw InvalidMatching("school of student '" + student + "' must be a string or null");
    }
  }
  try {
    return Matching::from_ids(instance, by_id);
  } catch (const UnknownId& e) {
    throw InvalidMatching(e.what());
  }
}

Matching load_matching(const Instance& instance, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidMatching("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_matching(instance, buffer.str());
}

CostValue parse_cost(const std::string& text, CostRealization realization, std::uint64_t base) {
  const Rational value = parse_rational(text);
  if (realization == CostRealization::kScalar) return CostValue(value);
  if (base < 2) throw std::invalid_argument("rank-count costs need a base of at least 2");
  if (denominator(value) != 1 || value < 0) {
    throw std::invalid_argument("'" + text + "' is not a rank-count cost");
  }
  BigInt rest = numerator(value);
  RankCounts counts(base);
  if (rest % base != 0) throw std::invalid_argument("'" + text + "' has a rank-0 component");
  rest /= base;
  for (int rank = 1; rest != 0; ++rank) {
    const BigInt digit = rest % base;
    if (digit != 0) counts.add(rank, static_cast<std::int64_t>(digit));
    rest /= base;
  }
  return CostValue(std::move(counts));
}

Json result_document(const Instance& instance, const SolveOutput& output) {
  const MechanismResult& result = *output.result;
  const Matching& chosen = output.chosen ? *output.chosen : result.matching;
  const auto violations = priority_violations(instance, chosen);

  Json doc;
  doc["matching"] = matching_json(instance, chosen);
  doc["transform"] = result.transform.describe();
  doc["cost"] = result.cost.to_string();
  doc["cost_realization"] = result.cost.is_scalar() ? "scalar" : "rank_counts";
  doc["preference_index"] = preference_index(instance, chosen);
  doc["rank"] = matching_rank(instance, chosen);
  doc["violated_students"] = student_list(instance, violations.violated_students);
  doc["optima_count"] = result.optima.matchings.size();
  doc["exhaustive"] = result.optima.exhaustive;
  doc["seed"] = output.seed;
  if (!output.tiebreak.empty()) doc["tiebreak"] = output.tiebreak;
  if (output.list_all) {
    Json all = Json::array();
    for (const auto& m : result.optima.matchings) all.push_back(matching_json(instance, m));
    doc["optima"] = std::move(all);
  }
  Json trace;
  trace["grid_size"] = result.trace.size;
  trace["iterations"] = result.trace.iterations;
  trace["augmentations"] = result.trace.augmentations;
  trace["cover_lines"] = result.trace.cover_lines.size();
  trace["fell_back_to_kernel"] = result.trace.fell_back_to_kernel;
  doc["trace"] = std::move(trace);
  return doc;
}

Json report_document(const Instance& instance, const MatchingReport& report,
                     const UtilityTransform& transform) {
  Json doc;
  doc["transform"] = transform.resolved(instance).describe();
  doc["cost"] = report.cost.to_string();
  doc["preference_index"] = report.preference_index;
  doc["rank"] = report.rank;
  doc["rank_signature"] = report.rank_signature;
  doc["violated_students"] = student_list(instance, report.violations.violated_students);
  Json pairs = Json::array();
  for (const auto& v : report.violations.pairs) {
    Json pair;
    pair["school"] = instance.school_id(v.school).value;
    pair["holder"] = instance.student_id(v.holder).value;
    pair["violated"] = instance.student_id(v.violated).value;
    pairs.push_back(std::move(pair));
  }
  doc["violations"] = std::move(pairs);

  Json pareto;
  if (!report.pareto) {
    pareto["status"] = "skipped";
  } else if (report.pareto->efficient()) {
    pareto["status"] = "efficient";
  } else {
    pareto["status"] = "dominated";
    pareto["dominated_by"] = matching_json(instance, *report.pareto->dominated_by);
  }
  doc["pareto"] = std::move(pareto);
  if (report.rank_minimal) {
    doc["rank_minimal"] = *report.rank_minimal;
  } else {
    doc["rank_minimal"] = "skipped";
  }
  return doc;
}

Json rank_minimal_document(const Instance& instance, const RankMinimalSet& set) {
  Json doc;
  doc["rank"] = set.rank;
  doc["count"] = set.matchings.size();
  doc["exhaustive"] = set.exhaustive;
  Json all = Json::array();
  for (const auto& m : set.matchings) all.push_back(matching_json(instance, m));
  doc["matchings"] = std::move(all);
  return doc;
}

Json strategy_document(const Instance& instance, const AuditOutput& output) {
  const StrategyReport& report = *output.report;
  Json doc;
  doc["student"] = instance.student_id(report.student).value;
  doc["transform"] = output.transform;
  doc["seed"] = output.seed;
  if (!output.tiebreak.empty()) doc["tiebreak"] = output.tiebreak;
  doc["truthful_expected_cost"] = to_decimal_string(report.truthful_expected_cost);
  doc["receivable_truthful"] = school_list(instance, report.receivable_truthful);
  if (report.best_misreport) {
    Json order = Json::array();
    for (const auto& tier : report.best_misreport->tiers) order.push_back(tier.front().value);
    doc["best_misreport"] = std::move(order);
  } else {
    doc["best_misreport"] = nullptr;
  }
  doc["misreport_expected_cost"] = to_decimal_string(report.misreport_expected_cost);
  doc["receivable_after"] = school_list(instance, report.receivable_after);
  doc["reports_evaluated"] = report.reports_evaluated;
  if (output.truthful_profile) {
    Json homogeneous;
    homogeneous["truthful"] = difference_json(*output.truthful_profile);
    if (output.misreport_profile) homogeneous["misreport"] = difference_json(*output.misreport_profile);
    doc["homogeneous"] = std::move(homogeneous);
  }
  return doc;
}

}  // namespace osm::io
