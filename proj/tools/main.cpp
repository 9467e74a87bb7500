#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "osm/analysis.hpp"
#include "osm/enumeration.hpp"
#include "osm/io.hpp"
#include "osm/mechanism.hpp"
#include "osm/strategy.hpp"
#include "osm/testsupport/generator.hpp"

namespace {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kBadInput = 2,
  kBadTransform = 3,
  kGuard = 4,
  kMisreportFound = 10,
};

void emit(const osm::io::Json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write " + out);
  file << text;
}

std::size_t max_seats_from_env() {
  const char* raw = std::getenv("OSM_MAX_SEATS");
  if (raw == nullptr || *raw == '\0') return osm::kDefaultMaxSeats;
  try {
    std::size_t used = 0;
    const long long value = std::stoll(raw, &used);
    if (used != std::string(raw).size() || value < 1) throw std::invalid_argument(raw);
    return static_cast<std::size_t>(value);
  } catch (const std::exception&) {
    throw osm::ValidationError(std::string("OSM_MAX_SEATS must be a positive integer, got '") + raw +
                               "'");
  }
}

osm::TieBreakCriterion parse_criterion(const std::string& name) {
  if (name == "variance" || name == "min-variance") return osm::TieBreakCriterion::kMinVariance;
  if (name == "violations" || name == "fewest-violations") {
    return osm::TieBreakCriterion::kFewestViolatedStudents;
  }
  throw osm::ValidationError("unknown tie-break criterion '" + name +
                             "' (expected variance or violations)");
}

osm::RankingFunction ranking_of_order(const osm::PreferenceProfile& profile) {
  osm::RankingFunction out;
  for (std::size_t t = 0; t < profile.tiers.size(); ++t) {
    for (const auto& school : profile.tiers[t]) out[school] = static_cast<int>(t + 1);
  }
  return out;
}

struct InstanceSource {
  std::string path;
  bool from_csv = false;
  std::string capacities;

  osm::Instance load() const {
    if (!from_csv) return osm::Instance::from_problem(osm::io::load_instance(path));
    std::optional<std::filesystem::path> caps;
    if (!capacities.empty()) caps = capacities;
    return osm::Instance::from_problem(osm::io::import_csv(path, caps));
  }
};

struct SolveArgs {
  InstanceSource source;
  std::string transform = "linear:a=1,b=-1";
  std::uint64_t seed = 0;
  std::vector<std::string> tiebreak;
  bool all = false;
  std::string out;
};

int cmd_solve(const SolveArgs& args) {
  const osm::Instance instance = args.source.load();
  const auto transform = osm::UtilityTransform::parse(args.transform);
  osm::MechanismOptions options;
  options.grid.max_seats = max_seats_from_env();
  const osm::MechanismResult result = osm::run_mechanism(instance, transform, args.seed, options);

  osm::io::SolveOutput output;
  output.result = &result;
  output.seed = args.seed;
  output.list_all = args.all;
  if (!args.tiebreak.empty()) {
    osm::TieBreakPolicy policy;
    policy.seed = args.seed;
    for (const auto& name : args.tiebreak) policy.criteria.push_back(parse_criterion(name));
    output.chosen = osm::tiebreak_select(instance, result.optima, policy);
    output.tiebreak = args.tiebreak;
  }
  emit(osm::io::result_document(instance, output), args.out);
  return kOk;
}

struct AnalyzeArgs {
  InstanceSource source;
  std::string matching;
  std::string transform = "linear:a=1,b=-1";
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& args) {
  const osm::Instance instance = args.source.load();
  const auto transform = osm::UtilityTransform::parse(args.transform);
  const osm::Matching matching = osm::io::load_matching(instance, args.matching);
  const osm::MatchingReport report = osm::analyze_matching(instance, matching, transform);
  emit(osm::io::report_document(instance, report, transform), args.out);
  if (!report.pareto) {
    std::cerr << "osm: certification skipped above " << osm::kCertificationStudentLimit
              << " students\n";
    return kGuard;
  }
  return kOk;
}

struct AuditArgs {
  InstanceSource source;
  std::string student;
  std::string transform = "linear:a=1,b=-1";
  std::uint64_t seed = 0;
  std::vector<std::string> tiebreak;
  std::string out;
};

int cmd_audit(const AuditArgs& args) {
  const osm::Instance instance = args.source.load();
  const auto transform = osm::UtilityTransform::parse(args.transform).resolved(instance);
  const osm::StudentIndex student = instance.student_index(args.student);
  osm::StrategyOptions options;
  options.grid.max_seats = max_seats_from_env();
  for (const auto& name : args.tiebreak) options.tiebreak.push_back(parse_criterion(name));
  const osm::StrategyReport report =
      osm::exhaustive_best_response(instance, student, transform, options, args.seed);

  osm::io::AuditOutput output;
  output.report = &report;
  output.transform = transform.describe();
  output.seed = args.seed;
  output.tiebreak = args.tiebreak;
  if (const auto population = osm::homogeneous_population(instance, student)) {
    osm::RankingFunction focal;
    for (osm::SchoolIndex s = 0; s < instance.num_schools(); ++s) {
      focal[instance.school_id(s)] = instance.rank(student, s);
    }
    output.truthful_profile = osm::homogeneous_receivable_set(focal, *population, transform);
    if (report.best_misreport) {
      output.misreport_profile = osm::homogeneous_receivable_set(
          ranking_of_order(*report.best_misreport), *population, transform);
    }
  }
  emit(osm::io::strategy_document(instance, output), args.out);
  return report.best_misreport ? kMisreportFound : kOk;
}

struct EnumerateArgs {
  InstanceSource source;
  std::size_t cap = osm::kDefaultEnumerationCap;
  std::string out;
};

int cmd_enumerate_rank_minimal(const EnumerateArgs& args) {
  const osm::Instance instance = args.source.load();
  const auto set = osm::enumerate_rank_minimal(instance, args.cap);
  emit(osm::io::rank_minimal_document(instance, set), args.out);
  return kOk;
}

int cmd_gen(const osm::testsupport::InstanceSpec& spec, const std::string& out) {
  const std::string text = osm::io::serialize_instance(osm::testsupport::generate_instance(spec));
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + out);
    file << text;
  }
  return kOk;
}

void add_source(CLI::App* cmd, InstanceSource& source) {
  cmd->add_option("instance", source.path, "Instance file (YAML or JSON), or CSV with --from-csv")
      ->required();
  cmd->add_flag("--from-csv", source.from_csv,
                "Read one row per student: id, first choice, second choice, ...");
  cmd->add_option("--capacities", source.capacities,
                  "CSV of school,capacity rows (with --from-csv; capacities default to 1)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Utility-based Hungarian mechanism for school choice"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run the mechanism on an instance");
  add_source(solve_cmd, solve.source);
  solve_cmd->add_option("--transform", solve.transform,
                        "linear:a=<rat>,b=<rat> | exp | exp:base=<int> | table:<csv>")
      ->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "Seed for the uniform pick among optima")
      ->capture_default_str();
  solve_cmd->add_option("--tiebreak", solve.tiebreak, "Criteria applied in order: variance, violations")
      ->delimiter(',');
  solve_cmd->add_flag("--all", solve.all, "List every minimum-cost matching");
  solve_cmd->add_option("--out", solve.out, "Write the result here instead of stdout");

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Report metrics and certificates for a matching");
  add_source(analyze_cmd, analyze.source);
  analyze_cmd->add_option("matching", analyze.matching, "Matching or result document")->required();
  analyze_cmd->add_option("--transform", analyze.transform, "Transform used for the cost")
      ->capture_default_str();
  analyze_cmd->add_option("--out", analyze.out, "Write the report here instead of stdout");

  AuditArgs audit;
  auto* audit_cmd = app.add_subcommand("audit", "Search one student's strict misreports");
  add_source(audit_cmd, audit.source);
  audit_cmd->add_option("--student", audit.student, "Student id")->required();
  audit_cmd->add_option("--transform", audit.transform, "Transform")->capture_default_str();
  audit_cmd->add_option("--seed", audit.seed, "Seed")->capture_default_str();
  audit_cmd->add_option("--tiebreak", audit.tiebreak,
                        "Average over the optima these criteria keep: variance, violations")
      ->delimiter(',');
  audit_cmd->add_option("--out", audit.out, "Write the report here instead of stdout");

  osm::testsupport::InstanceSpec spec;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--students", spec.students, "Number of students")->capture_default_str();
  gen_cmd->add_option("--schools", spec.schools, "Number of schools")->capture_default_str();
  gen_cmd->add_option("--cap-min", spec.cap_min, "Smallest capacity")->capture_default_str();
  gen_cmd->add_option("--cap-max", spec.cap_max, "Largest capacity")->capture_default_str();
  gen_cmd->add_option("--ties", spec.ties, "Chance that neighbouring entries tie")
      ->capture_default_str();
  gen_cmd->add_option("--incomplete", spec.incomplete, "Chance that a list is cut short")
      ->capture_default_str();
  gen_cmd->add_option("--skew", spec.skew, "Popularity skew across schools")->capture_default_str();
  gen_cmd->add_option("--seed", spec.seed, "Seed")->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "Write the instance here instead of stdout");

  EnumerateArgs rank_minimal;
  auto* rank_cmd =
      app.add_subcommand("enumerate-rank-minimal", "List every matching of minimum rank");
  add_source(rank_cmd, rank_minimal.source);
  rank_cmd->add_option("--cap", rank_minimal.cap, "Stop listing after this many")
      ->capture_default_str();
  rank_cmd->add_option("--out", rank_minimal.out, "Write the listing here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve);
    if (*analyze_cmd) return cmd_analyze(analyze);
    if (*audit_cmd) return cmd_audit(audit);
    if (*gen_cmd) return cmd_gen(spec, gen_out);
    if (*rank_cmd) return cmd_enumerate_rank_minimal(rank_minimal);
  } catch (const osm::io::ParseError& e) {
    for (const auto& d : e.diagnostics()) std::cerr << d.to_string() << "\n";
    return kBadInput;
  } catch (const osm::TransformError& e) {
    std::cerr << "osm: invalid transform: " << e.what() << "\n";
    return kBadTransform;
  } catch (const osm::GuardExceeded& e) {
    std::cerr << "osm: " << e.what() << "\n";
    return kGuard;
  } catch (const osm::ValidationError& e) {
    std::cerr << "osm: " << e.what() << "\n";
    return kBadInput;
  } catch (const osm::InvalidMatching& e) {
    std::cerr << "osm: invalid matching: " << e.what() << "\n";
    return kBadInput;
  } catch (const osm::UnknownId& e) {
    std::cerr << "osm: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception& e) {
    std::cerr << "osm: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
