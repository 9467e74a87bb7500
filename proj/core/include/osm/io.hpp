#pragma once

// Instance files, CSV import and the JSON documents the command line emits.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "osm/analysis.hpp"
#include "osm/enumeration.hpp"
#include "osm/mechanism.hpp"
#include "osm/model.hpp"
#include "osm/strategy.hpp"

namespace osm::io {

using Json = nlohmann::ordered_json;

struct Diagnostic {
  std::string source;
  int line = 0;  // 1-based; 0 when unknown
  int column = 0;
  std::string message;
  /// "source:line:col: message"
  std::string to_string() const;
};

/// Malformed document or a problem failing validation; each diagnostic points
/// at the offending place in the input.
class ParseError : public ValidationError {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Reads an instance document (YAML or JSON):
///
///   students: [{id, preferences: [[school, ...], ...]}]
///   schools:  [{id, capacity, priorities: [[student, ...], ...]}]
///
/// A bare id in place of a tier is a one-element tier; `priorities` may be
/// omitted. The result passes validate_problem.
SchoolChoiceProblem parse_instance(const std::string& text, const std::string& source = "<input>");
SchoolChoiceProblem load_instance(const std::filesystem::path& path);

/// Canonical JSON form: fixed key order, two-space indent, trailing newline.
std::string serialize_instance(const SchoolChoiceProblem& problem);
Json instance_json(const SchoolChoiceProblem& problem);

/// One row per student: id, first choice, second choice, ... Blank cells are
/// skipped and a leading header row is recognised by its first cell
/// ("student", "student_id" or "id"). Schools appear in order of first
/// mention; `capacities` (rows of school,capacity) adds schools and sets
/// capacities, which otherwise default to 1.
SchoolChoiceProblem import_csv(const std::filesystem::path& rankings,
                               const std::optional<std::filesystem::path>& capacities = std::nullopt);

/// Student id -> school id or null, in student order.
Json matching_json(const Instance& instance, const Matching& matching);

/// Accepts a bare student -> school object or any document with a
/// "matching" member (such as a result document). Throws InvalidMatching.
Matching parse_matching(const Instance& instance, const std::string& text);
Matching load_matching(const Instance& instance, const std::filesystem::path& path);

/// Inverse of CostValue::to_string for the given realization. Rank-count
/// costs are decoded digit by digit in `base`. Throws std::invalid_argument.
CostValue parse_cost(const std::string& text, CostRealization realization, std::uint64_t base = 0);

struct SolveOutput {
  const MechanismResult* result = nullptr;
  /// Overrides result->matching when a tie-break policy chose differently.
  std::optional<Matching> chosen;
  std::vector<std::string> tiebreak;
  bool list_all = false;
  std::uint64_t seed = 0;
};

Json result_document(const Instance& instance, const SolveOutput& output);
Json report_document(const Instance& instance, const MatchingReport& report,
                     const UtilityTransform& transform);
Json rank_minimal_document(const Instance& instance, const RankMinimalSet& set);

struct AuditOutput {
  const StrategyReport* report = nullptr;
  std::string transform;
  std::uint64_t seed = 0;
  std::vector<std::string> tiebreak;
  /// Present when every other student shares one ranking: difference
  /// profiles of the truthful report and of the best misreport.
  std::optional<ReceivableSet> truthful_profile;
  std::optional<ReceivableSet> misreport_profile;
};

Json strategy_document(const Instance& instance, const AuditOutput& output);

}  // namespace osm::io
