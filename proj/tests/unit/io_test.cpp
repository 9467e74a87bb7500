#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "instances.hpp"
#include "osm/io.hpp"
#include "osm/testsupport/generator.hpp"

namespace osm {
namespace {

namespace fs = std::filesystem;

fs::path data(const std::string& name) { return fs::path(OSM_TEST_DATA_DIR) / name; }

class TempDir {
 public:
  TempDir()
      : path_(fs::temp_directory_path() /
              ("osm_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name, std::ios::binary) << text;
    return path_ / name;
  }

 private:
  fs::path path_;
};

TEST(InstanceIo, LoadsTheWorkedExample) {
  EXPECT_EQ(io::load_instance(data("worked_example.yaml")), test::worked_example());
  EXPECT_EQ(io::load_instance(data("multiple_minima.yaml")), test::multiple_minima_example());
}

TEST(InstanceIo, RoundTripsGeneratedInstances) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    testsupport::InstanceSpec spec;
    spec.students = 1 + seed % 6;
    spec.schools = 1 + seed % 4;
    spec.cap_max = 3;
    spec.ties = 0.3;
    spec.incomplete = 0.3;
    spec.seed = seed;
    const auto problem = testsupport::generate_instance(spec);
    const auto text = io::serialize_instance(problem);
    EXPECT_EQ(io::parse_instance(text), problem) << text;
    EXPECT_EQ(io::serialize_instance(io::parse_instance(text)), text);
  }
}

TEST(InstanceIo, BareIdsAreSingletonTiers) {
  const auto problem = io::parse_instance(R"(
students:
  - id: a
    preferences: [x, [y, z]]
schools:
  - {id: x, capacity: 1}
  - {id: y, capacity: 1}
  - {id: z, capacity: 1}
)");
  ASSERT_EQ(problem.students[0].preferences.tiers.size(), 2u);
  EXPECT_EQ(problem.students[0].preferences.tiers[0].size(), 1u);
  EXPECT_EQ(problem.students[0].preferences.tiers[1].size(), 2u);
  EXPECT_TRUE(problem.schools[0].priorities.tiers.empty());
}

TEST(InstanceIo, DiagnosticsPointAtTheOffendingLine) {
  const std::string text =
      "students:\n"
      "  - id: a\n"
      "    preferences: [[x], [ghost]]\n"
      "schools:\n"
      "  - id: x\n"
      "    capacity: 1\n";
  try {
    io::parse_instance(text, "bad.yaml");
    FAIL() << "expected a parse error";
  } catch (const io::ParseError& e) {
    ASSERT_FALSE(e.diagnostics().empty());
    const auto& d = e.diagnostics().front();
    EXPECT_EQ(d.source, "bad.yaml");
    EXPECT_EQ(d.line, 3);
    EXPECT_NE(d.message.find("ghost"), std::string::npos) << d.message;
  }
}

TEST(InstanceIo, RejectsUnknownKeysAndBadCapacity) {
  try {
    io::parse_instance("students: []\nschools: []\nextra: 1\n", "x.yaml");
    FAIL();
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.diagnostics().front().line, 3);
  }
  try {
    io::parse_instance("students:\n  - id: a\nschools:\n  - id: x\n    capacity: many\n");
    FAIL();
  } catch (const io::ParseError& e) {
    EXPECT_EQ(e.diagnostics().front().line, 5);
  }
  try {
    io::parse_instance("students: [\n");
    FAIL();
  } catch (const io::ParseError& e) {
    EXPECT_GT(e.diagnostics().front().line, 0);
  }
}

TEST(InstanceIo, MissingFile) {
  EXPECT_THROW(io::load_instance(data("does_not_exist.yaml")), io::ParseError);
}

TEST(CsvImport, HeaderCapacitiesAndDefaults) {
  TempDir dir;
  const auto rankings = dir.write("r.csv",
                                  "student,first,second\n"
                                  "i1,s1,s2\n"
                                  "i2, s2 ,\n"
                                  "\n"
                                  "i3,s2,s1\n");
  const auto plain = io::import_csv(rankings);
  ASSERT_EQ(plain.students.size(), 3u);
  EXPECT_EQ(plain.students[1].preferences.tiers.size(), 1u);
  EXPECT_EQ(plain.students[1].preferences.tiers[0][0].value, "s2");
  ASSERT_EQ(plain.schools.size(), 2u);
  EXPECT_EQ(plain.schools[0].capacity, 1);

  const auto caps = dir.write("c.csv", "school,capacity\ns2,2\ns9,1\n");
  const auto with_caps = io::import_csv(rankings, caps);
  ASSERT_EQ(with_caps.schools.size(), 3u);
  EXPECT_EQ(with_caps.schools[0].id.value, "s2");
  EXPECT_EQ(with_caps.schools[0].capacity, 2);

  const auto bad = dir.write("bad.csv", "school,capacity\ns2,two\n");
  EXPECT_THROW(io::import_csv(rankings, bad), io::ParseError);
  const auto dup = dir.write("dup.csv", "i1,s1\ni1,s1\n");
  EXPECT_THROW(io::import_csv(dup), io::ParseError);
}

TEST(MatchingIo, RoundTripAndResultDocuments) {
  const auto inst = Instance::from_problem(test::worked_example());
  const auto m = test::matching_of(inst, {"s1", "s3", "-"});
  const auto text = io::matching_json(inst, m).dump();
  EXPECT_EQ(io::parse_matching(inst, text), m);
  EXPECT_EQ(io::parse_matching(inst, R"({"matching": )" + text + R"(, "cost": "1"})"), m);
  EXPECT_THROW(io::parse_matching(inst, "{"), InvalidMatching);
  EXPECT_THROW(io::parse_matching(inst, R"({"i1": 3})"), InvalidMatching);
  EXPECT_THROW(io::parse_matching(inst, R"({"nobody": "s1"})"), InvalidMatching);
  EXPECT_THROW(io::parse_matching(inst, R"({"i1": "s1", "i2": "s1"})"), InvalidMatching);
}

TEST(CostIo, DecodesBothRealizations) {
  EXPECT_EQ(io::parse_cost("2.5", CostRealization::kScalar), CostValue(Rational(5, 2)));
  EXPECT_EQ(io::parse_cost("1/3", CostRealization::kScalar), CostValue(Rational(1, 3)));
  RankCounts counts(5);
  counts.add(1, 2);
  counts.add(3, 1);
  const CostValue value(counts);
  EXPECT_EQ(io::parse_cost(value.to_string(), CostRealization::kRankCounts, 5), value);
  EXPECT_THROW(io::parse_cost("7", CostRealization::kRankCounts, 5), std::invalid_argument);
  EXPECT_THROW(io::parse_cost("1/2", CostRealization::kRankCounts, 5), std::invalid_argument);
  EXPECT_THROW(io::parse_cost("x", CostRealization::kScalar), std::invalid_argument);
}

}  // namespace
}  // namespace osm
