#pragma once

// Strategic-action auditing: what a student can gain by misreporting, under
// a uniform draw over all minimum-cost matchings.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "osm/cost.hpp"
#include "osm/enumeration.hpp"
#include "osm/model.hpp"
#include "osm/seat_grid.hpp"
#include "osm/transform.hpp"

namespace osm {

struct StrategyOptions {
  /// Exhaustive search over strict reports refuses more schools than this.
  std::size_t cap_schools = 7;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
  GridOptions grid;
  /// When set, the draw is uniform over the optima surviving these criteria
  /// (judged on the reported profiles) instead of over all optima.
  std::vector<TieBreakCriterion> tiebreak;
};

/// Distribution of one student's outcome over the optima of a (possibly
/// misreported) instance, valued with the student's true preferences.
struct OutcomeDistribution {
  /// Mean of f(true rank) over the optima (after any tie-break filtering).
  Rational expected_cost;
  /// Schools the student receives in at least one optimum. kUnassigned marks
  /// an optimum leaving the student without a seat.
  std::set<SchoolIndex> receivable;
  /// Number of optima the draw is over.
  std::size_t optima = 0;
};

/// `reported` and `truth` differ at most in the student's profile.
/// Throws GuardExceeded if optimum enumeration is truncated.
OutcomeDistribution outcome_distribution(const Instance& reported, const Instance& truth,
                                         StudentIndex student, const UtilityTransform& transform,
                                         const StrategyOptions& options = {});

/// Expected true cost of the student's outcome under truthful reporting.
/// The draw is uniform over optima, so the value does not depend on the seed.
Rational expected_outcome(const Instance& instance, StudentIndex student,
                          const UtilityTransform& transform, std::uint64_t seed = 0,
                          const StrategyOptions& options = {});

struct StrategyReport {
  StudentIndex student = 0;
  Rational truthful_expected_cost;
  /// Strict order that strictly lowers the expected true cost, if any.
  std::optional<PreferenceProfile> best_misreport;
  /// Expected true cost under best_misreport (truthful cost when none).
  Rational misreport_expected_cost;
  std::set<SchoolIndex> receivable_truthful;
  std::set<SchoolIndex> receivable_after;
  std::size_t reports_evaluated = 0;
};

/// Tries every strict order over the schools as the student's report; the
/// first order (lexicographic in school index order) with the lowest expected
/// true cost wins, provided it beats truth-telling strictly.
StrategyReport exhaustive_best_response(const Instance& instance, StudentIndex student,
                                        const UtilityTransform& transform,
                                        const StrategyOptions& options = {},
                                        std::uint64_t seed = 0);

/// f(focal rank of s) - f(population rank of s), per school.
using DifferenceProfile = std::map<SchoolId, Rational>;

struct ReceivableSet {
  DifferenceProfile differences;
  /// Schools minimizing the difference.
  std::set<SchoolId> schools;
};

/// Schools a focal student can receive when everyone else shares
/// `population`. An automatic exponential base is resolved as for a square
/// instance with one seat per school. Throws std::invalid_argument when the
/// rankings cover different schools.
ReceivableSet homogeneous_receivable_set(const RankingFunction& focal,
                                         const RankingFunction& population,
                                         const UtilityTransform& transform);

/// The shared completed ranking of every student except `focal`, if they all
/// agree.
std::optional<RankingFunction> homogeneous_population(const Instance& instance, StudentIndex focal);

/// n students and n unit-capacity schools s1..sn. Student i1 reports
/// `focal_order` (school numbers, 1-based); everyone else reports s1 > ... > sn.
SchoolChoiceProblem homogeneous_problem(std::size_t n, const std::vector<int>& focal_order);

struct HomogeneousVerification {
  std::size_t n = 0;
  std::size_t optima_count = 0;
  std::size_t expected_optima = 0;
  Rational shared_cost;
  Rational expected_shared_cost;

  struct FocalSchool {
    SchoolId school;
    bool receivable = false;
    /// Optima that give the focal student this school.
    std::size_t optima = 0;
    /// All feasible matchings that do, and whether each costs the closed form.
    std::size_t matchings = 0;
    bool costs_match_formula = true;
    Rational formula_cost;
  };
  std::vector<FocalSchool> focal;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

/// Checks the homogeneous-population counting results for size n (n <= 6):
/// n! optima sharing cost sum_k f(k) when everyone agrees, and, with a
/// rotated focal student, (n-1)! matchings of closed-form cost per focal
/// school and (n-1)! optima per receivable school. Throws GuardExceeded for n > 6.
HomogeneousVerification verify_homogeneous_counts(std::size_t n, const UtilityTransform& transform);

}  // namespace osm
