#include "osm/strategy.hpp"

#include <algorithm>
#include <numeric>

namespace osm {

namespace {

std::size_t factorial(std::size_t n) {
  std::size_t out = 1;
  for (std::size_t k = 2; k <= n; ++k) out *= k;
  return out;
}

Rational true_cost(const Instance& truth, StudentIndex student, SchoolIndex school,
                   const UtilityTransform& f) {
  return apply_scalar(f, truth.rank_of(student, school));
}

}  // namespace

OutcomeDistribution outcome_distribution(const Instance& reported, const Instance& truth,
                                         StudentIndex student, const UtilityTransform& transform,
                                         const StrategyOptions& options) {
  const UtilityTransform f = transform.resolved(truth);
  const OptimumSet optima = enumerate_min_cost(reported, f, options.enumeration_cap, options.grid);
  if (!optima.exhaustive) {
    throw GuardExceeded("more than " + std::to_string(options.enumeration_cap) +
                        " optima; expected outcome needs the full set");
  }
  const std::vector<Matching> pool = options.tiebreak.empty()
                                         ? optima.matchings
                                         : tiebreak_candidates(reported, optima, options.tiebreak);
  OutcomeDistribution out;
  Rational total = 0;
  for (const auto& m : pool) {
    total += true_cost(truth, student, m[student], f);
    out.receivable.insert(m[student]);
  }
  out.optima = pool.size();
  out.expected_cost = total / static_cast<long long>(out.optima);
  return out;
}

Rational expected_outcome(const Instance& instance, StudentIndex student,
                          const UtilityTransform& transform, std::uint64_t /*seed*/,
                          const StrategyOptions& options) {
  if (student >= instance.num_students()) throw UnknownId("student index out of range");
  return outcome_distribution(instance, instance, student, transform, options).expected_cost;
}

StrategyReport exhaustive_best_response(const Instance& instance, StudentIndex student,
                                        const UtilityTransform& transform,
                                        const StrategyOptions& options, std::uint64_t /*seed*/) {
  if (student >= instance.num_students()) throw UnknownId("student index out of range");
  if (instance.num_schools() > options.cap_schools) {
    throw GuardExceeded("strategy search is limited to " + std::to_string(options.cap_schools) +
                        " schools (instance has " + std::to_string(instance.num_schools()) + ")");
  }
  const UtilityTransform f = transform.resolved(instance);

  StrategyReport report;
  report.student = student;
  const auto truthful = outcome_distribution(instance, instance, student, f, options);
  report.truthful_expected_cost = truthful.expected_cost;
  report.receivable_truthful = truthful.receivable;
  report.misreport_expected_cost = truthful.expected_cost;
  report.receivable_after = truthful.receivable;

  std::vector<SchoolIndex> order(instance.num_schools());
  std::iota(order.begin(), order.end(), SchoolIndex{0});
  do {
    PreferenceProfile profile;
    for (SchoolIndex s : order) profile.tiers.push_back({instance.school_id(s)});
    const Instance reported = instance.with_preferences(student, profile);
    const auto outcome = outcome_distribution(reported, instance, student, f, options);
    ++report.reports_evaluated;
    if (outcome.expected_cost < report.misreport_expected_cost) {
      report.best_misreport = std::move(profile);
      report.misreport_expected_cost = outcome.expected_cost;
      report.receivable_after = outcome.receivable;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return report;
}

ReceivableSet homogeneous_receivable_set(const RankingFunction& focal,
                                         const RankingFunction& population,
                                         const UtilityTransform& transform) {
  if (focal.size() != population.size() ||
      !std::equal(focal.begin(), focal.end(), population.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw std::invalid_argument("focal and population rankings cover different schools");
  }
  const UtilityTransform f = transform.resolved(focal.size(), focal.size());
  ReceivableSet out;
  for (const auto& [school, rank] : focal) {
    out.differences[school] = apply_scalar(f, rank) - apply_scalar(f, population.at(school));
  }
  const auto best = std::min_element(out.differences.begin(), out.differences.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
  for (const auto& [school, diff] : out.differences) {
    if (diff == best->second) out.schools.insert(school);
  }
  return out;
}

std::optional<RankingFunction> homogeneous_population(const Instance& instance, StudentIndex focal) {
  std::optional<RankingFunction> shared;
  for (StudentIndex i = 0; i < instance.num_students(); ++i) {
    if (i == focal) continue;
    RankingFunction ranks;
    for (SchoolIndex s = 0; s < instance.num_schools(); ++s) {
      ranks[instance.school_id(s)] = instance.rank(i, s);
    }
    if (!shared) {
      shared = std::move(ranks);
    } else if (*shared != ranks) {
      return std::nullopt;
    }
  }
  return shared;
}

SchoolChoiceProblem homogeneous_problem(std::size_t n, const std::vector<int>& focal_order) {
  SchoolChoiceProblem problem;
  for (std::size_t k = 1; k <= n; ++k) {
    problem.schools.push_back({SchoolId{"s" + std::to_string(k)}, 1, {}});
  }
  for (std::size_t i = 1; i <= n; ++i) {
    Student student{StudentId{"i" + std::to_string(i)}, {}};
    if (i == 1) {
      for (int k : focal_order) student.preferences.tiers.push_back({SchoolId{"s" + std::to_string(k)}});
    } else {
      for (std::size_t k = 1; k <= n; ++k) {
        student.preferences.tiers.push_back({SchoolId{"s" + std::to_string(k)}});
      }
    }
    problem.students.push_back(std::move(student));
  }
  return problem;
}

HomogeneousVerification verify_homogeneous_counts(std::size_t n, const UtilityTransform& transform) {
  if (n == 0 || n > 6) throw GuardExceeded("homogeneous verification needs 1 <= n <= 6");
  HomogeneousVerification out;
  out.n = n;
  const UtilityTransform f = transform.resolved(n, n);
  auto fail = [&](std::string message) { out.failures.push_back(std::move(message)); };

  // Everyone agrees: n! optima, each costing sum_k f(k).
  std::vector<int> identity(n);
  std::iota(identity.begin(), identity.end(), 1);
  const Instance agreeing = Instance::from_problem(homogeneous_problem(n, identity));
  const OptimumSet all = enumerate_min_cost(agreeing, f, factorial(n) + 1);
  out.optima_count = all.matchings.size();
  out.expected_optima = factorial(n);
  out.shared_cost = all.shared_cost.to_rational();
  out.expected_shared_cost = 0;
  for (std::size_t k = 1; k <= n; ++k) out.expected_shared_cost += apply_scalar(f, static_cast<int>(k));
  if (out.optima_count != out.expected_optima) {
    fail("expected " + std::to_string(out.expected_optima) + " optima, found " +
         std::to_string(out.optima_count));
  }
  if (out.shared_cost != out.expected_shared_cost) {
    fail("shared cost " + to_decimal_string(out.shared_cost) + " differs from " +
         to_decimal_string(out.expected_shared_cost));
  }
  for (const auto& m : all.matchings) {
    if (cost_of_matching(f, agreeing, m).to_rational() != out.expected_shared_cost) {
      fail("an optimum does not carry the shared cost");
      break;
    }
  }

  // Focal student rotated: s2 > s3 > ... > sn > s1.
  std::vector<int> rotated(n);
  for (std::size_t k = 0; k < n; ++k) rotated[k] = static_cast<int>((k + 1) % n) + 1;
  const Instance mixed = Instance::from_problem(homogeneous_problem(n, rotated));
  RankingFunction focal;
  RankingFunction population;
  for (SchoolIndex s = 0; s < n; ++s) {
    focal[mixed.school_id(s)] = mixed.rank(0, s);
    population[mixed.school_id(s)] = n > 1 ? mixed.rank(1, s) : mixed.rank(0, s);
  }
  const ReceivableSet receivable = homogeneous_receivable_set(focal, population, f);
  Rational population_total = 0;
  for (const auto& [school, rank] : population) population_total += apply_scalar(f, rank);

  const OptimumSet optima = enumerate_min_cost(mixed, f, factorial(n) + 1);
  for (SchoolIndex s = 0; s < n; ++s) {
    HomogeneousVerification::FocalSchool row;
    row.school = mixed.school_id(s);
    row.receivable = receivable.schools.contains(row.school);
    row.formula_cost = apply_scalar(f, focal.at(row.school)) + population_total -
                       apply_scalar(f, population.at(row.school));
    for (const auto& m : optima.matchings) {
      if (m[0] == s) ++row.optima;
    }
    out.focal.push_back(std::move(row));
  }
  for_each_feasible_matching(mixed, [&](std::span<const SchoolIndex> a) {
    auto& row = out.focal[a[0]];
    ++row.matchings;
    Rational cost = 0;
    for (StudentIndex i = 0; i < n; ++i) cost += apply_scalar(f, mixed.rank(i, a[i]));
    if (cost != row.formula_cost) row.costs_match_formula = false;
  });

  const std::size_t per_school = factorial(n - 1);
  for (const auto& row : out.focal) {
    if (row.matchings != per_school) {
      fail(row.school.value + ": " + std::to_string(row.matchings) + " matchings, expected " +
           std::to_string(per_school));
    }
    if (!row.costs_match_formula) fail(row.school.value + ": matching cost differs from closed form");
    const std::size_t expected = row.receivable ? per_school : 0;
    if (row.optima != expected) {
      fail(row.school.value + ": " + std::to_string(row.optima) + " optima, expected " +
           std::to_string(expected));
    }
  }
  return out;
}

}  // namespace osm
