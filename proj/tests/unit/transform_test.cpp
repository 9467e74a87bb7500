#include <filesystem>
#include <fstream>
#include <random>

#include <gtest/gtest.h>

#include "instances.hpp"
#include "osm/transform.hpp"

namespace osm {
namespace {

using test::matching_of;

TEST(Apply, PreferenceIndexAtRankOne) {
  EXPECT_EQ(apply(UtilityTransform::preference_index(), 1), CostValue(Rational(0)));
  EXPECT_EQ(apply_scalar(UtilityTransform::preference_index(), 4), Rational(3));
}

TEST(Apply, ExponentialRealizations) {
  const auto f = UtilityTransform::exponential(3);
  EXPECT_EQ(apply_scalar(f, 3), Rational(27));
  const CostValue counts = apply(f, 3, CostRealization::kRankCounts);
  EXPECT_FALSE(counts.is_scalar());
  EXPECT_EQ(counts.to_rational(), Rational(27));
}

TEST(Apply, FlatTableRejected) {
  EXPECT_THROW(UtilityTransform::table({{1, 0}, {2, 0}}), TransformError);
  const auto unchecked = UtilityTransform::unchecked_table({{1, 0}, {2, 0}});
  EXPECT_FALSE(unchecked.valid());
  EXPECT_THROW(apply(unchecked, 1), TransformError);
}

TEST(Apply, RankOutsideDomain) {
  const auto table = UtilityTransform::table({{1, 0}, {2, 1}});
  EXPECT_THROW(apply(table, 3), TransformError);
  EXPECT_THROW(apply(table, 0), TransformError);
  EXPECT_THROW(apply(UtilityTransform::exponential(), 1), TransformError);
  EXPECT_THROW(apply(UtilityTransform::preference_index(), 1, CostRealization::kRankCounts),
               TransformError);
}

TEST(Factories, Validation) {
  EXPECT_THROW(UtilityTransform::linear(0, 1), TransformError);
  EXPECT_THROW(UtilityTransform::linear(1, -2), TransformError);
  EXPECT_THROW(UtilityTransform::exponential(1), TransformError);
  EXPECT_THROW(UtilityTransform::table({{1, -1}, {2, 0}}), TransformError);
  EXPECT_THROW(UtilityTransform::table({{1, 0}, {3, 1}}), TransformError);
  EXPECT_THROW(UtilityTransform::table({}), TransformError);
}

TEST(CostOfMatching, MultipleMinimaFirstMatching) {
  const auto inst = Instance::from_problem(test::multiple_minima_example());
  const auto m = matching_of(inst, {"s1", "s2", "s3", "s4"});
  EXPECT_EQ(cost_of_matching(UtilityTransform::preference_index(), inst, m).to_rational(), 2);
}

TEST(CostOfMatching, AllFirstChoicesCostNothing) {
  const auto inst = Instance::from_problem(test::worked_example());
  EXPECT_TRUE(cost_of_matching(UtilityTransform::preference_index(), inst,
                               matching_of(inst, {"s1", "s3", "s2"}))
                  .is_zero());
}

TEST(CostOfMatching, RankMinimalExampleUnderBaseThree) {
  const auto inst = Instance::from_problem(test::rank_minimal_example());
  const auto f = UtilityTransform::exponential(3);
  EXPECT_EQ(cost_of_matching(f, inst, matching_of(inst, {"s3", "s2", "s1"})).to_rational(), 15);
  EXPECT_EQ(cost_of_matching(f, inst, matching_of(inst, {"s2", "s3", "s1"})).to_rational(), 27);
  EXPECT_EQ(cost_of_matching(f, inst, matching_of(inst, {"s2", "s3", "s1"}),
                             CostRealization::kRankCounts)
                .to_rational(),
            27);
}

TEST(CostOfMatching, UnassignedChargedOneRankPastTheList) {
  const auto inst = Instance::from_problem(
      test::strict_problem({{"i1", {"s1", "s2"}}, {"i2", {"s1"}}}, {"s1", "s2"}));
  // i2's completed profile is s1 > s2, so unassigned costs f(3).
  const auto m = matching_of(inst, {"s1", "-"});
  EXPECT_EQ(cost_of_matching(UtilityTransform::linear(1, 0), inst, m).to_rational(), 1 + 3);
}

TEST(CostOfMatching, ForeignMatchingRejected) {
  const auto a = Instance::from_problem(test::worked_example());
  const auto b = Instance::from_problem(test::multiple_minima_example());
  const auto m = matching_of(b, {"s1", "s2", "s3", "s4"});
  EXPECT_THROW(cost_of_matching(UtilityTransform::preference_index(), a, m), InvalidMatching);
}

TEST(StrictlyIncreasing, Examples) {
  EXPECT_TRUE(check_strictly_increasing(UtilityTransform::preference_index(), 10));
  EXPECT_FALSE(check_strictly_increasing(UtilityTransform::unchecked_table({{1, 0}, {2, 5}, {3, 5}}), 3));
  EXPECT_TRUE(check_strictly_increasing(UtilityTransform::exponential(2), 30));
  EXPECT_TRUE(check_strictly_increasing(UtilityTransform::exponential(), 12));
  EXPECT_FALSE(check_strictly_increasing(UtilityTransform::table({{1, 0}, {2, 1}}), 3));
  EXPECT_FALSE(check_strictly_increasing(UtilityTransform::unchecked_table({{1, -1}, {2, 1}}), 2));
}

TEST(CostOfMatching, MonotoneUnderPointwiseRankImprovement) {
  const auto inst = Instance::from_problem(test::multiple_minima_example());
  std::vector<std::vector<SchoolIndex>> all;
  for_each_feasible_matching(inst, [&](std::span<const SchoolIndex> a) {
    all.emplace_back(a.begin(), a.end());
  });
  const std::vector<UtilityTransform> transforms = {
      UtilityTransform::preference_index(), UtilityTransform::exponential(5),
      UtilityTransform::table({{1, 0}, {2, Rational(1, 3)}, {3, 7}, {4, 8}})};
  for (const auto& f : transforms) {
    for (const auto& a : all) {
      for (const auto& b : all) {
        bool weak = true;
        bool strict = false;
        for (StudentIndex i = 0; i < a.size(); ++i) {
          weak = weak && inst.rank_of(i, a[i]) <= inst.rank_of(i, b[i]);
          strict = strict || inst.rank_of(i, a[i]) < inst.rank_of(i, b[i]);
        }
        if (!weak) continue;
        const auto ca = cost_of_matching(f, inst, Matching::create(inst, a));
        const auto cb = cost_of_matching(f, inst, Matching::create(inst, b));
        EXPECT_LE(ca, cb);
        if (strict) EXPECT_LT(ca, cb);
      }
    }
  }
}

TEST(Realizations, InduceTheSameOrderOnMatchings) {
  const auto inst = Instance::from_problem(test::rank_maximal_example());
  const auto f = UtilityTransform::exponential().resolved(inst);
  std::vector<std::pair<CostValue, CostValue>> costs;
  for_each_feasible_matching(inst, [&](std::span<const SchoolIndex> a) {
    const auto m = Matching::create(inst, {a.begin(), a.end()});
    costs.emplace_back(cost_of_matching(f, inst, m),
                       cost_of_matching(f, inst, m, CostRealization::kRankCounts));
  });
  ASSERT_EQ(costs.size(), 120u);
  for (const auto& [sa, ca] : costs) {
    for (const auto& [sb, cb] : costs) {
      ASSERT_EQ(sa < sb, ca < cb);
      ASSERT_EQ(sa == sb, ca == cb);
    }
  }
}

TEST(Parse, Specs) {
  EXPECT_EQ(UtilityTransform::parse("linear:a=1,b=-1").describe(), "linear:a=1,b=-1");
  EXPECT_EQ(UtilityTransform::parse("linear:a=1/2,b=0.5").describe(), "linear:a=0.5,b=0.5");
  EXPECT_TRUE(UtilityTransform::parse("exp").needs_resolution());
  EXPECT_EQ(UtilityTransform::parse("exp:base=3").base(), 3u);
  EXPECT_THROW(UtilityTransform::parse("exp:base=1"), TransformError);
  EXPECT_THROW(UtilityTransform::parse("exp:base=x"), TransformError);
  EXPECT_THROW(UtilityTransform::parse("linear:a=1"), TransformError);
  EXPECT_THROW(UtilityTransform::parse("cubic"), TransformError);
  EXPECT_THROW(UtilityTransform::parse("table:/nonexistent/table.csv"), TransformError);
}

TEST(Parse, TableFromCsvIsValidatedEagerly) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto good = dir / "osm_transform_good.csv";
  const auto bad = dir / "osm_transform_bad.csv";
  std::ofstream(good) << "rank,value\n1,0\n2,1.5\n3,10\n";
  std::ofstream(bad) << "1,0\n2,4\n3,4\n";
  const auto f = UtilityTransform::parse("table:" + good.string());
  EXPECT_EQ(f.max_rank(), 3);
  EXPECT_EQ(apply_scalar(f, 2), Rational(3, 2));
  EXPECT_THROW(UtilityTransform::parse("table:" + bad.string()), TransformError);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}

TEST(Resolution, AutomaticBaseExceedsSeatsAndStudents) {
  const auto f = UtilityTransform::exponential();
  EXPECT_EQ(f.resolved(7, 4).base(), 8u);
  EXPECT_EQ(f.resolved(3, 9).base(), 10u);
  EXPECT_EQ(UtilityTransform::exponential(3).resolved(7, 4).base(), 3u);
  EXPECT_EQ(f.resolved(3, 3).preferred_realization(3), CostRealization::kRankCounts);
  EXPECT_EQ(UtilityTransform::exponential(3).preferred_realization(3), CostRealization::kScalar);
  EXPECT_EQ(UtilityTransform::preference_index().preferred_realization(3), CostRealization::kScalar);
}

TEST(Apply, IsDeterministic) {
  std::mt19937_64 rng(3);
  const auto f = UtilityTransform::table({{1, 1}, {2, 2}, {3, Rational(9, 2)}});
  for (int k = 0; k < 50; ++k) {
    const int r = std::uniform_int_distribution<int>(1, 3)(rng);
    EXPECT_EQ(apply(f, r), apply(f, r));
  }
}

}  // namespace
}  // namespace osm
