#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "instances.hpp"
#include "osm/analysis.hpp"
#include "osm/enumeration.hpp"
#include "osm/testsupport/brute_force.hpp"
#include "osm/testsupport/generator.hpp"

namespace osm {
namespace {

using test::matching_of;

std::set<Matching> as_set(const std::vector<Matching>& v) { return {v.begin(), v.end()}; }

TEST(EnumerateMinCost, MultipleMinimaExample) {
  const auto inst = Instance::from_problem(test::multiple_minima_example());
  const auto optima = enumerate_min_cost(inst, UtilityTransform::preference_index());
  EXPECT_TRUE(optima.exhaustive);
  EXPECT_EQ(optima.shared_cost.to_rational(), 2);
  const std::set<Matching> expected = {matching_of(inst, {"s1", "s2", "s3", "s4"}),
                                       matching_of(inst, {"s2", "s4", "s1", "s3"}),
                                       matching_of(inst, {"s1", "s4", "s3", "s2"})};
  EXPECT_EQ(as_set(optima.matchings), expected);
  EXPECT_TRUE(std::is_sorted(optima.matchings.begin(), optima.matchings.end()));
}

TEST(EnumerateMinCost, IdenticalPreferencesGiveFactorialOptima) {
  std::size_t factorial = 1;
  for (std::size_t n = 1; n <= 6; ++n) {
    factorial *= n;
    std::vector<std::string> schools;
    for (std::size_t k = 1; k <= n; ++k) schools.push_back("s" + std::to_string(k));
    std::vector<test::StudentRow> rows;
    for (std::size_t i = 1; i <= n; ++i) rows.push_back({"i" + std::to_string(i), schools});
    const auto inst = Instance::from_problem(test::strict_problem(rows, schools));
    const auto optima = enumerate_min_cost(inst, UtilityTransform::exponential());
    EXPECT_EQ(optima.matchings.size(), factorial) << n;
  }
}

TEST(EnumerateMinCost, CapTruncates) {
  std::vector<std::string> schools = {"s1", "s2", "s3", "s4"};
  std::vector<test::StudentRow> rows;
  for (int i = 1; i <= 4; ++i) rows.push_back({"i" + std::to_string(i), schools});
  const auto inst = Instance::from_problem(test::strict_problem(rows, schools));
  const auto optima = enumerate_min_cost(inst, UtilityTransform::preference_index(), 5);
  EXPECT_FALSE(optima.exhaustive);
  EXPECT_EQ(optima.matchings.size(), 5u);
}

TEST(EnumerateMinCost, SeatsOfOneSchoolCountOnce) {
  // Two students, one school with two seats: one matching, not two.
  const auto inst = Instance::from_problem(
      test::strict_problem({{"i1", {"s1"}}, {"i2", {"s1"}}}, {"s1"}, 2));
  const auto optima = enumerate_min_cost(inst, UtilityTransform::preference_index());
  ASSERT_EQ(optima.matchings.size(), 1u);
  EXPECT_EQ(optima.matchings[0], matching_of(inst, {"s1", "s1"}));
}

TEST(EnumerateMinCost, AgreesWithBruteForceOnGeneratedInstances) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    testsupport::InstanceSpec spec;
    spec.students = 2 + seed % 4;
    spec.schools = 1 + seed % 3;
    spec.cap_min = 1;
    spec.cap_max = 2;
    spec.ties = 0.3;
    spec.incomplete = 0.3;
    spec.seed = seed;
    const auto problem = testsupport::generate_instance(spec);
    const auto inst = Instance::from_problem(problem);
    if (inst.grid_size() > 6) continue;
    for (const auto& f : {UtilityTransform::preference_index(), UtilityTransform::exponential()}) {
      const auto got = enumerate_min_cost(inst, f);
      const auto oracle = testsupport::brute_force_optima(problem, f);
      EXPECT_EQ(as_set(got.matchings), as_set(oracle.matchings)) << "seed " << seed;
      EXPECT_EQ(got.shared_cost.to_rational(), oracle.shared_cost.to_rational()) << "seed " << seed;
    }
  }
}

TEST(EnumerateMinCost, RowAndColumnOrderDoNotMatter) {
  const auto base = test::multiple_minima_example();
  const auto base_inst = Instance::from_problem(base);
  const auto reference = enumerate_min_cost(base_inst, UtilityTransform::preference_index());
  auto to_ids = [](const Instance& inst, const std::vector<Matching>& ms) {
    std::set<std::map<std::string, std::string>> out;
    for (const auto& m : ms) {
      std::map<std::string, std::string> row;
      for (StudentIndex i = 0; i < m.size(); ++i) {
        row[inst.student_id(i).value] = inst.school_id(m[i]).value;
      }
      out.insert(row);
    }
    return out;
  };
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto shuffled = base;
    std::shuffle(shuffled.students.begin(), shuffled.students.end(), rng);
    std::shuffle(shuffled.schools.begin(), shuffled.schools.end(), rng);
    const auto inst = Instance::from_problem(shuffled);
    const auto got = enumerate_min_cost(inst, UtilityTransform::preference_index());
    EXPECT_EQ(to_ids(inst, got.matchings), to_ids(base_inst, reference.matchings));
  }
}

TEST(EnumerateRankMinimal, ThreeStudentExample) {
  const auto inst = Instance::from_problem(test::rank_minimal_example());
  const auto set = enumerate_rank_minimal(inst);
  EXPECT_EQ(set.rank, 2);
  EXPECT_TRUE(set.exhaustive);
  const std::set<Matching> expected = {matching_of(inst, {"s3", "s2", "s1"}),
                                       matching_of(inst, {"s2", "s3", "s1"})};
  EXPECT_EQ(as_set(set.matchings), expected);
}

TEST(EnumerateRankMinimal, FiveStudentExample) {
  const auto inst = Instance::from_problem(test::rank_maximal_example());
  const auto set = enumerate_rank_minimal(inst);
  EXPECT_EQ(set.rank, 2);
  for (const auto& m : set.matchings) EXPECT_EQ(matching_rank(inst, m), 2);
  EXPECT_TRUE(as_set(set.matchings).contains(matching_of(inst, {"s2", "s3", "s4", "s5", "s1"})));
}

TEST(EnumerateRankMinimal, MatchesBruteForceRankSet) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    testsupport::InstanceSpec spec;
    spec.students = 2 + seed % 4;
    spec.schools = 2 + seed % 3;
    spec.ties = 0.2;
    spec.incomplete = 0.2;
    spec.seed = seed;
    const auto inst = Instance::from_problem(testsupport::generate_instance(spec));
    const int best = minimum_rank(inst);
    std::set<Matching> expected;
    for_each_feasible_matching(inst, [&](std::span<const SchoolIndex> a) {
      const auto m = Matching::create(inst, {a.begin(), a.end()});
      if (matching_rank(inst, m) == best) expected.insert(m);
    });
    const auto set = enumerate_rank_minimal(inst);
    EXPECT_EQ(set.rank, best);
    EXPECT_EQ(as_set(set.matchings), expected) << "seed " << seed;
  }
}

TEST(EnumerateRankMinimal, GuardsLargeInstances) {
  std::vector<std::string> schools;
  std::vector<test::StudentRow> rows;
  for (int k = 1; k <= 11; ++k) schools.push_back("s" + std::to_string(k));
  for (int i = 1; i <= 11; ++i) rows.push_back({"i" + std::to_string(i), schools});
  const auto inst = Instance::from_problem(test::strict_problem(rows, schools));
  EXPECT_THROW(enumerate_rank_minimal(inst), GuardExceeded);
}

TEST(TieBreak, VarianceScoresOfTheThreeMinima) {
  const auto inst = Instance::from_problem(test::multiple_minima_example());
  // n^2 * variance: 16 * 0.25 and 16 * 0.75.
  EXPECT_EQ(scaled_rank_variance(inst, matching_of(inst, {"s1", "s2", "s3", "s4"})), 4);
  EXPECT_EQ(scaled_rank_variance(inst, matching_of(inst, {"s2", "s4", "s1", "s3"})), 4);
  EXPECT_EQ(scaled_rank_variance(inst, matching_of(inst, {"s1", "s4", "s3", "s2"})), 12);
}

TEST(TieBreak, MinVarianceKeepsTheFirstTwo) {
  const auto inst = Instance::from_problem(test::multiple_minima_example());
  const auto optima = enumerate_min_cost(inst, UtilityTransform::preference_index());
  const auto kept = tiebreak_candidates(inst, optima, {TieBreakCriterion::kMinVariance});
  const std::set<Matching> expected = {matching_of(inst, {"s1", "s2", "s3", "s4"}),
                                       matching_of(inst, {"s2", "s4", "s1", "s3"})};
  EXPECT_EQ(as_set(kept), expected);
  std::set<Matching> picked;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    TieBreakPolicy policy{{TieBreakCriterion::kMinVariance}, seed};
    picked.insert(tiebreak_select(inst, optima, policy));
  }
  EXPECT_EQ(picked, expected);
}

TEST(TieBreak, FewestViolatedStudents) {
  auto problem = test::multiple_minima_example();
  // s3 ranks i3 above i4, so giving s3 to i4 while i3 wants it is a violation.
  problem.schools[2].priorities.tiers = {{StudentId{"i3"}}, {StudentId{"i4"}},
                                         {StudentId{"i1"}, StudentId{"i2"}}};
  const auto inst = Instance::from_problem(problem);
  const auto optima = enumerate_min_cost(inst, UtilityTransform::preference_index());
  const auto kept = tiebreak_candidates(inst, optima, {TieBreakCriterion::kFewestViolatedStudents});
  for (const auto& m : kept) EXPECT_TRUE(priority_violations(inst, m).violated_students.empty());
  EXPECT_FALSE(as_set(kept).contains(matching_of(inst, {"s2", "s4", "s1", "s3"})));
}

TEST(TieBreak, RejectsEmptySetsAndRepeatedCriteria) {
  const auto inst = Instance::from_problem(test::multiple_minima_example());
  const auto optima = enumerate_min_cost(inst, UtilityTransform::preference_index());
  EXPECT_THROW(tiebreak_candidates(inst, optima,
                                   {TieBreakCriterion::kMinVariance, TieBreakCriterion::kMinVariance}),
               std::invalid_argument);
  EXPECT_THROW(tiebreak_select(inst, OptimumSet{}, {}), std::invalid_argument);
}

TEST(SeededPick, DeterministicAndInRange) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    EXPECT_EQ(seeded_pick(seed, 7), seeded_pick(seed, 7));
    EXPECT_LT(seeded_pick(seed, 7), 7u);
  }
  EXPECT_EQ(seeded_pick(5, 1), 0u);
}

}  // namespace
}  // namespace osm
