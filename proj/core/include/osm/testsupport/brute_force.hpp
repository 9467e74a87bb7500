#pragma once

// Reference oracle for minimum-cost matchings. Walks seat assignments
// straight from the problem and prices them with the transform; it never
// builds a cost matrix and shares nothing with the solver.

#include "osm/enumeration.hpp"
#include "osm/model.hpp"
#include "osm/transform.hpp"

namespace osm::testsupport {

inline constexpr std::size_t kBruteForceGridLimit = 8;

/// Every feasible matching with minimum cost, sorted. Feasible means what the
/// squared seat grid can express: exactly max(0, students - seats) students
/// unassigned. Throws GuardExceeded when max(students, seats) exceeds
/// kBruteForceGridLimit.
OptimumSet brute_force_optima(const SchoolChoiceProblem& problem, const UtilityTransform& transform);

}  // namespace osm::testsupport
