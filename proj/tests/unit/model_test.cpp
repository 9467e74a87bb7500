#include <gtest/gtest.h>

#include "instances.hpp"
#include "osm/model.hpp"

namespace osm {
namespace {

using test::matching_of;
using test::strict_problem;

bool has_violation(const ValidationResult& r, Violation::Kind kind) {
  for (const auto& v : r.violations) {
    if (v.kind == kind) return true;
  }
  return false;
}

TEST(ValidateProblem, WorkedExampleIsValid) {
  EXPECT_TRUE(validate_problem(test::worked_example()).ok());
}

TEST(ValidateProblem, NoStudents) {
  SchoolChoiceProblem p;
  p.schools.push_back({SchoolId{"s1"}, 1, {}});
  const auto r = validate_problem(p);
  ASSERT_FALSE(r.ok());
  EXPECT_TRUE(has_violation(r, Violation::Kind::kNoStudents));
  EXPECT_EQ(r.violations[0].message, "no students");
}

TEST(ValidateProblem, UnknownSchoolNamesStudentAndSchool) {
  auto p = strict_problem({{"i1", {"s1", "s9"}}}, {"s1"});
  const auto r = validate_problem(p);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].kind, Violation::Kind::kUnknownSchool);
  EXPECT_NE(r.violations[0].message.find("s9"), std::string::npos);
  EXPECT_NE(r.violations[0].message.find("i1"), std::string::npos);
  EXPECT_EQ(r.violations[0].path, "/students/0/preferences/1/0");
}

TEST(ValidateProblem, ReportsEveryViolation) {
  SchoolChoiceProblem p = strict_problem({{"i1", {"s1"}}, {"i1", {"s1", "s1"}}}, {"s1", "s2"});
  p.schools[1].capacity = 0;
  p.students[0].preferences.tiers.push_back({});
  p.schools[0].priorities.tiers = {{StudentId{"ghost"}}};
  const auto r = validate_problem(p);
  EXPECT_TRUE(has_violation(r, Violation::Kind::kDuplicateStudent));
  EXPECT_TRUE(has_violation(r, Violation::Kind::kBadCapacity));
  EXPECT_TRUE(has_violation(r, Violation::Kind::kEmptyTier));
  EXPECT_TRUE(has_violation(r, Violation::Kind::kRepeatedSchool));
  EXPECT_TRUE(has_violation(r, Violation::Kind::kUnknownStudent));
}

TEST(ValidateProblem, EmptyIdsAndDuplicateSchools) {
  SchoolChoiceProblem p = strict_problem({{"", {}}}, {"s1", "s1"});
  const auto r = validate_problem(p);
  EXPECT_TRUE(has_violation(r, Violation::Kind::kEmptyId));
  EXPECT_TRUE(has_violation(r, Violation::Kind::kDuplicateSchool));
}

TEST(InstanceConstruction, ThrowsWithAllViolations) {
  SchoolChoiceProblem p;
  try {
    Instance::from_problem(p);
    FAIL() << "expected ValidationFailed";
  } catch (const ValidationFailed& e) {
    EXPECT_EQ(e.result().violations.size(), 2u);
  }
}

TEST(RankingOf, WorkedExampleStudentTwo) {
  const RankingFunction r = ranking_of(test::worked_example(), StudentId{"i2"});
  EXPECT_EQ(r, (RankingFunction{{SchoolId{"s1"}, 3}, {SchoolId{"s2"}, 2}, {SchoolId{"s3"}, 1}}));
}

TEST(RankingOf, SingleTierMeansAllFirst) {
  SchoolChoiceProblem p = strict_problem({{"i1", {}}}, {"s1", "s2", "s3"});
  p.students[0].preferences.tiers = {{SchoolId{"s1"}, SchoolId{"s2"}, SchoolId{"s3"}}};
  for (const auto& [school, rank] : ranking_of(p, StudentId{"i1"})) EXPECT_EQ(rank, 1) << school.value;
}

TEST(RankingOf, RankMaximalExampleStudentFive) {
  const RankingFunction r = ranking_of(test::rank_maximal_example(), StudentId{"i5"});
  EXPECT_EQ(r, (RankingFunction{{SchoolId{"s1"}, 1},
                                {SchoolId{"s2"}, 2},
                                {SchoolId{"s5"}, 3},
                                {SchoolId{"s3"}, 4},
                                {SchoolId{"s4"}, 5}}));
}

TEST(RankingOf, Errors) {
  const auto p = strict_problem({{"i1", {"s1"}}}, {"s1", "s2"});
  EXPECT_THROW(ranking_of(p, StudentId{"nobody"}), UnknownId);
  EXPECT_THROW(ranking_of(p, StudentId{"i1"}), ValidationError);
}

std::vector<SchoolId> schools(std::initializer_list<const char*> ids) {
  std::vector<SchoolId> out;
  for (const char* id : ids) out.push_back(SchoolId{id});
  return out;
}

TEST(CompletePreferences, SingleChoiceMakesRestSecond) {
  PreferenceProfile p{{{SchoolId{"s2"}}}};
  const auto full = complete_preferences(p, schools({"s1", "s2", "s3", "s4"}));
  EXPECT_EQ(full.tiers, (std::vector<std::vector<SchoolId>>{
                            {SchoolId{"s2"}}, {SchoolId{"s1"}, SchoolId{"s3"}, SchoolId{"s4"}}}));
}

TEST(CompletePreferences, CompleteProfileUnchanged) {
  PreferenceProfile p{{{SchoolId{"s2"}}, {SchoolId{"s1"}}}};
  EXPECT_EQ(complete_preferences(p, schools({"s1", "s2"})), p);
}

TEST(CompletePreferences, TwoRankedOfFour) {
  PreferenceProfile p{{{SchoolId{"s1"}}, {SchoolId{"s2"}}}};
  const auto full = complete_preferences(p, schools({"s1", "s2", "s3", "s4"}));
  ASSERT_EQ(full.tiers.size(), 3u);
  EXPECT_EQ(full.tiers[2], (std::vector<SchoolId>{SchoolId{"s3"}, SchoolId{"s4"}}));
}

TEST(CompletePreferences, UnknownSchoolThrows) {
  PreferenceProfile p{{{SchoolId{"s9"}}}};
  EXPECT_THROW(complete_preferences(p, schools({"s1"})), UnknownId);
}

TEST(CompletePreferences, IdempotentAndOrderPreserving) {
  const auto all = schools({"s1", "s2", "s3", "s4", "s5"});
  PreferenceProfile p{{{SchoolId{"s4"}, SchoolId{"s2"}}, {SchoolId{"s5"}}}};
  const auto once = complete_preferences(p, all);
  EXPECT_EQ(complete_preferences(once, all), once);
  for (std::size_t t = 0; t < p.tiers.size(); ++t) EXPECT_EQ(once.tiers[t], p.tiers[t]);

  SchoolChoiceProblem problem = strict_problem({{"i1", {}}}, {"s1", "s2", "s3", "s4", "s5"});
  problem.students[0].preferences = once;
  const auto ranks = ranking_of(problem, StudentId{"i1"});
  EXPECT_EQ(ranks.size(), 5u);
  int lowest = 100;
  for (const auto& [school, rank] : ranks) lowest = std::min(lowest, rank);
  EXPECT_EQ(lowest, 1);
}

TEST(Instance, RanksUseCompletedProfiles) {
  const auto inst = Instance::from_problem(strict_problem({{"i1", {"s2"}}}, {"s1", "s2", "s3"}));
  EXPECT_EQ(inst.rank(0, 1), 1);
  EXPECT_EQ(inst.rank(0, 0), 2);
  EXPECT_EQ(inst.rank(0, 2), 2);
  EXPECT_EQ(inst.unassigned_rank(0), 3);
  EXPECT_EQ(inst.rank_of(0, kUnassigned), 3);
  EXPECT_EQ(inst.max_rank(), 2);
}

TEST(Instance, UnlistedStudentsShareLowestPriorityTier) {
  SchoolChoiceProblem p = strict_problem({{"i1", {"s1"}}, {"i2", {"s1"}}, {"i3", {"s1"}}}, {"s1"});
  p.schools[0].priorities.tiers = {{StudentId{"i2"}}};
  const auto inst = Instance::from_problem(p);
  EXPECT_EQ(inst.priority_tier(0, 1), 0u);
  EXPECT_EQ(inst.priority_tier(0, 0), 1u);
  EXPECT_EQ(inst.priority_tier(0, 2), 1u);
}

TEST(Matching, CapacityEnforcedAtConstruction) {
  const auto inst = Instance::from_problem(strict_problem({{"i1", {"s1"}}, {"i2", {"s1"}}}, {"s1"}));
  EXPECT_THROW(Matching::create(inst, {0, 0}), InvalidMatching);
  EXPECT_THROW(Matching::create(inst, {0}), InvalidMatching);
  EXPECT_THROW(Matching::create(inst, {0, 7}), InvalidMatching);
  EXPECT_NO_THROW(Matching::create(inst, {0, kUnassigned}));
}

TEST(Matching, FromIds) {
  const auto inst = Instance::from_problem(test::worked_example());
  const auto m = Matching::from_ids(inst, {{"i1", "s1"}, {"i2", "s3"}, {"i3", std::nullopt}});
  EXPECT_EQ(m[0], 0u);
  EXPECT_EQ(m[1], 2u);
  EXPECT_EQ(m[2], kUnassigned);
  EXPECT_THROW(Matching::from_ids(inst, {{"i9", "s1"}}), InvalidMatching);
  EXPECT_THROW(Matching::from_ids(inst, {{"i1", "s9"}}), InvalidMatching);
}

TEST(MatchedSchool, WorkedExampleOutcome) {
  const auto inst = Instance::from_problem(test::worked_example());
  const auto m = matching_of(inst, {"s1", "s3", "s2"});
  EXPECT_EQ(matched_school(inst, m, StudentId{"i1"}), SchoolId{"s1"});
  EXPECT_THROW(matched_school(inst, m, StudentId{"i7"}), UnknownId);
}

TEST(MatchedSchool, SingleStudent) {
  const auto inst = Instance::from_problem(strict_problem({{"i1", {"s1"}}}, {"s1"}));
  EXPECT_EQ(matched_school(inst, matching_of(inst, {"s1"}), StudentId{"i1"}), SchoolId{"s1"});
}

TEST(MatchedSchool, TwoStudentsOneSeatLeavesOneUnassigned) {
  const auto inst = Instance::from_problem(strict_problem({{"i1", {"s1"}}, {"i2", {"s1"}}}, {"s1"}));
  std::size_t seen = 0;
  for_each_feasible_matching(inst, [&](std::span<const SchoolIndex> a) {
    ++seen;
    const auto m = Matching::create(inst, {a.begin(), a.end()});
    const bool first = !matched_school(inst, m, StudentId{"i1"}).has_value();
    const bool second = !matched_school(inst, m, StudentId{"i2"}).has_value();
    EXPECT_NE(first, second);
  });
  EXPECT_EQ(seen, 2u);
}

TEST(FeasibleMatchings, CountsCapacityRespectingMaps) {
  // Two schools with two seats each and three students: every student picks
  // one of two schools, minus the two maps putting all three in one school.
  const auto inst = Instance::from_problem(
      strict_problem({{"i1", {"s1"}}, {"i2", {"s1"}}, {"i3", {"s1"}}}, {"s1", "s2"}, 2));
  std::size_t count = 0;
  for_each_feasible_matching(inst, [&](std::span<const SchoolIndex>) { ++count; });
  EXPECT_EQ(count, 6u);
}

TEST(FeasibleMatchings, StopsEarly) {
  const auto inst = Instance::from_problem(test::multiple_minima_example());
  std::size_t count = 0;
  for_each_feasible_matching(inst, [&](std::span<const SchoolIndex>) { return ++count < 5; });
  EXPECT_EQ(count, 5u);
}

}  // namespace
}  // namespace osm
