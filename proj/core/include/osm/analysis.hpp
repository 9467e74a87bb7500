#pragma once

// Metrics and certificates for a matching. Unassigned students are charged
// their unassigned rank (one past their worst completed rank) everywhere
// except rank_signature, which counts assigned students only.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "osm/cost.hpp"
#include "osm/model.hpp"
#include "osm/transform.hpp"

namespace osm {

/// Exhaustive certifications refuse instances with more students than this.
inline constexpr std::size_t kCertificationStudentLimit = 10;

/// Sum over students of (rank - 1).
std::uint64_t preference_index(const Instance& instance, const Matching& matching);

/// Worst rank any student receives.
int matching_rank(const Instance& instance, const Matching& matching);

/// Smallest rank any feasible matching achieves (brute force, guarded).
int minimum_rank(const Instance& instance);

/// No feasible matching has strictly smaller rank. Guarded.
bool is_rank_minimal(const Instance& instance, const Matching& matching);

/// counts[r-1] = assigned students at rank r, for r = 1..instance.max_rank().
std::vector<std::size_t> rank_signature(const Instance& instance, const Matching& matching);

/// Matchings whose signature is lexicographically largest from rank 1
/// (brute force, guarded).
std::vector<Matching> rank_maximal_matchings(const Instance& instance);

struct ParetoCertificate {
  /// A feasible matching that makes no student worse off and at least one
  /// better off, if one exists.
  std::optional<Matching> dominated_by;
  bool efficient() const { return !dominated_by.has_value(); }
};

/// Every student weakly prefers `candidate` and at least one strictly does.
bool pareto_dominates(const Instance& instance, const Matching& candidate, const Matching& base);

/// Exhaustive domination search. Guarded.
ParetoCertificate is_pareto_efficient(const Instance& instance, const Matching& matching);

struct ViolationPair {
  StudentIndex holder;    // assigned to the school
  StudentIndex violated;  // wanted it and has strictly higher priority there
  SchoolIndex school;
  auto operator<=>(const ViolationPair&) const = default;
};

struct PriorityViolations {
  std::set<StudentIndex> violated_students;
  std::vector<ViolationPair> pairs;
};

/// (holder, violated, school) whenever `violated` strictly prefers `school` to
/// their own assignment and sits in a strictly higher priority tier there
/// than `holder`, who holds a seat at `school`.
PriorityViolations priority_violations(const Instance& instance, const Matching& matching);

struct MatchingReport {
  std::uint64_t preference_index = 0;
  int rank = 0;
  std::vector<std::size_t> rank_signature;
  CostValue cost;
  PriorityViolations violations;
  /// Absent when the instance is above the certification limit.
  std::optional<ParetoCertificate> pareto;
  std::optional<bool> rank_minimal;
};

/// All metrics; certification fields are left empty above the guard instead
/// of throwing.
MatchingReport analyze_matching(const Instance& instance, const Matching& matching,
                                const UtilityTransform& transform);

}  // namespace osm
