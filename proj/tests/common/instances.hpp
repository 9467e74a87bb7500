#pragma once

// Instances from the mechanism's worked examples, plus small builders.

#include <string>
#include <utility>
#include <vector>

#include "osm/model.hpp"

namespace osm::test {

using StudentRow = std::pair<std::string, std::vector<std::string>>;

/// Strict profiles; every school gets `capacity` seats and no priorities.
inline SchoolChoiceProblem strict_problem(const std::vector<StudentRow>& students,
                                          const std::vector<std::string>& schools, int capacity = 1) {
  SchoolChoiceProblem problem;
  for (const auto& [id, order] : students) {
    Student student{StudentId{id}, {}};
    for (const auto& s : order) student.preferences.tiers.push_back({SchoolId{s}});
    problem.students.push_back(std::move(student));
  }
  for (const auto& s : schools) problem.schools.push_back({SchoolId{s}, capacity, {}});
  return problem;
}

/// Schools listed per student in student order; "-" leaves a student unassigned.
inline Matching matching_of(const Instance& instance, const std::vector<std::string>& schools) {
  std::vector<SchoolIndex> a;
  for (const auto& s : schools) a.push_back(s == "-" ? kUnassigned : instance.school_index(s));
  return Matching::create(instance, std::move(a));
}

inline SchoolChoiceProblem worked_example() {
  return strict_problem({{"i1", {"s1", "s2", "s3"}},
                         {"i2", {"s3", "s2", "s1"}},
                         {"i3", {"s2", "s3", "s1"}}},
                        {"s1", "s2", "s3"});
}

inline SchoolChoiceProblem multiple_minima_example() {
  return strict_problem({{"i1", {"s1", "s2", "s3", "s4"}},
                         {"i2", {"s4", "s2", "s1", "s3"}},
                         {"i3", {"s3", "s1", "s4", "s2"}},
                         {"i4", {"s3", "s4", "s2", "s1"}}},
                        {"s1", "s2", "s3", "s4"});
}

inline SchoolChoiceProblem rank_minimal_example() {
  return strict_problem({{"i1", {"s3", "s2", "s1"}},
                         {"i2", {"s2", "s3", "s1"}},
                         {"i3", {"s2", "s1", "s3"}}},
                        {"s1", "s2", "s3"});
}

inline SchoolChoiceProblem rank_maximal_example() {
  return strict_problem({{"i1", {"s1", "s2", "s3", "s4", "s5"}},
                         {"i2", {"s2", "s3", "s4", "s5", "s1"}},
                         {"i3", {"s3", "s4", "s5", "s1", "s2"}},
                         {"i4", {"s4", "s5", "s1", "s2", "s3"}},
                         {"i5", {"s1", "s2", "s5", "s3", "s4"}}},
                        {"s1", "s2", "s3", "s4", "s5"});
}

inline SchoolChoiceProblem never_chosen_example() {
  return strict_problem({{"i1", {"s1", "s2", "s3"}},
                         {"i2", {"s3", "s1", "s2"}},
                         {"i3", {"s3", "s2", "s1"}}},
                        {"s1", "s2", "s3"});
}

inline SchoolChoiceProblem strategy_example() {
  return strict_problem({{"i1", {"s2", "s3", "s4", "s1"}},
                         {"i2", {"s1", "s2", "s3", "s4"}},
                         {"i3", {"s1", "s2", "s3", "s4"}},
                         {"i4", {"s1", "s2", "s3", "s4"}}},
                        {"s1", "s2", "s3", "s4"});
}

}  // namespace osm::test
