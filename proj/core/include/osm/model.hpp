#pragma once

// Domain model for one-sided school choice: students with (possibly tied,
// possibly incomplete) preference tiers, schools with capacities and
// priority tiers, and matchings between them.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <vector>

#include "osm/errors.hpp"

namespace osm {

struct StudentId {
  std::string value;
  auto operator<=>(const StudentId&) const = default;
};

struct SchoolId {
  std::string value;
  auto operator<=>(const SchoolId&) const = default;
};

using StudentIndex = std::size_t;
using SchoolIndex = std::size_t;

/// Marker school index for a student left without a seat.
inline constexpr SchoolIndex kUnassigned = std::numeric_limits<SchoolIndex>::max();

/// Ordered tiers of schools; tier j is preferred to tier k iff j < k.
/// Schools in one tier are tied. A profile may leave schools unranked.
struct PreferenceProfile {
  std::vector<std::vector<SchoolId>> tiers;
  bool operator==(const PreferenceProfile&) const = default;
};

/// Ordered tiers of students at a school; earlier tiers have priority.
/// Students not listed share an implicit lowest tier.
struct PriorityStructure {
  std::vector<std::vector<StudentId>> tiers;
  bool operator==(const PriorityStructure&) const = default;
};

/// School id -> 1-based rank (1 = best). Tied schools share a rank.
using RankingFunction = std::map<SchoolId, int>;

struct Student {
  StudentId id;
  PreferenceProfile preferences;
  bool operator==(const Student&) const = default;
};

struct School {
  SchoolId id;
  int capacity = 1;
  PriorityStructure priorities;
  bool operator==(const School&) const = default;
};

/// Raw problem description. May be invalid; see validate_problem.
struct SchoolChoiceProblem {
  std::vector<Student> students;
  std::vector<School> schools;
  bool operator==(const SchoolChoiceProblem&) const = default;
};

struct Violation {
  enum class Kind {
    kNoStudents,
    kNoSchools,
    kEmptyId,
    kDuplicateStudent,
    kDuplicateSchool,
    kBadCapacity,
    kEmptyTier,
    kUnknownSchool,
    kUnknownStudent,
    kRepeatedSchool,
    kRepeatedStudent,
  };
  Kind kind;
  // Location inside the problem document, e.g. "/students/1/preferences/0/2".
  std::string path;
  std::string message;
};

struct ValidationResult {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationResult validate_problem(const SchoolChoiceProblem& problem);

/// Thrown by Instance construction; carries every violation found.
class ValidationFailed : public ValidationError {
 public:
  explicit ValidationFailed(ValidationResult result);
  const ValidationResult& result() const { return result_; }

 private:
  ValidationResult result_;
};

/// Unranked schools are appended as one final tied tier. Throws UnknownId if
/// the profile names a school outside `all_schools`.
PreferenceProfile complete_preferences(const PreferenceProfile& profile,
                                       const std::vector<SchoolId>& all_schools);

/// Requires the student's profile to already cover every school.
RankingFunction ranking_of(const SchoolChoiceProblem& problem, const StudentId& student);

/// Validated, completed, index-resolved view of a problem. All algorithms
/// work on an Instance so ranks are always taken from completed profiles.
class Instance {
 public:
  /// Validates, completes every profile and builds rank tables.
  /// Throws ValidationFailed.
  static Instance from_problem(const SchoolChoiceProblem& problem);

  std::size_t num_students() const { return problem_.students.size(); }
  std::size_t num_schools() const { return problem_.schools.size(); }
  std::size_t total_seats() const { return total_seats_; }
  /// Side length of the squared seat grid.
  std::size_t grid_size() const { return std::max(total_seats_, num_students()); }
  /// Students that must stay unassigned when seats run out.
  std::size_t forced_unassigned() const {
    return num_students() > total_seats_ ? num_students() - total_seats_ : 0;
  }

  int capacity(SchoolIndex s) const { return problem_.schools[s].capacity; }
  /// Completed rank of school s for student i.
  int rank(StudentIndex i, SchoolIndex s) const { return ranks_[i * num_schools() + s]; }
  /// Rank charged when i receives no school: one past i's worst completed rank.
  int unassigned_rank(StudentIndex i) const { return unassigned_rank_[i]; }
  /// rank(i, s), or unassigned_rank(i) for kUnassigned.
  int rank_of(StudentIndex i, SchoolIndex s) const {
    return s == kUnassigned ? unassigned_rank(i) : rank(i, s);
  }
  /// Largest completed rank over all students.
  int max_rank() const { return max_rank_; }
  /// 0-based priority tier of student i at school s; unlisted students get
  /// the implicit tier one past the explicit ones.
  std::size_t priority_tier(SchoolIndex s, StudentIndex i) const {
    return priority_tiers_[s * num_students() + i];
  }

  const StudentId& student_id(StudentIndex i) const { return problem_.students[i].id; }
  const SchoolId& school_id(SchoolIndex s) const { return problem_.schools[s].id; }
  std::optional<StudentIndex> find_student(std::string_view id) const;
  std::optional<SchoolIndex> find_school(std::string_view id) const;
  StudentIndex student_index(std::string_view id) const;  // throws UnknownId
  SchoolIndex school_index(std::string_view id) const;    // throws UnknownId

  /// The problem with all profiles completed.
  const SchoolChoiceProblem& problem() const { return problem_; }

  /// Copy of this instance with one student's profile replaced.
  Instance with_preferences(StudentIndex i, const PreferenceProfile& profile) const;

 private:
  Instance() = default;
  void index();

  SchoolChoiceProblem problem_;
  std::size_t total_seats_ = 0;
  int max_rank_ = 1;
  std::vector<int> ranks_;
  std::vector<int> unassigned_rank_;
  std::vector<std::size_t> priority_tiers_;
  std::unordered_map<std::string, StudentIndex> student_lookup_;
  std::unordered_map<std::string, SchoolIndex> school_lookup_;
};

/// Immutable student -> school assignment. Capacities are checked when the
/// matching is created, so every Matching value is feasible for the instance
/// it was built against.
class Matching {
 public:
  /// Throws InvalidMatching on size mismatch, bad school index, or overfull school.
  static Matching create(const Instance& instance, std::vector<SchoolIndex> assignment);
  /// Builds from id pairs; students absent from the map are unassigned.
  static Matching from_ids(const Instance& instance,
                           const std::map<std::string, std::optional<std::string>>& by_id);

  std::size_t size() const { return assignment_.size(); }
  SchoolIndex operator[](StudentIndex i) const { return assignment_[i]; }
  std::span<const SchoolIndex> assignment() const { return assignment_; }

  /// Throws InvalidMatching if this matching was not built for `instance`.
  void check_fits(const Instance& instance) const;

  auto operator<=>(const Matching&) const = default;

 private:
  explicit Matching(std::vector<SchoolIndex> assignment) : assignment_(std::move(assignment)) {}
  std::vector<SchoolIndex> assignment_;
};

/// Assigned school of a student, or nullopt when unassigned. Throws UnknownId.
std::optional<SchoolId> matched_school(const Instance& instance, const Matching& matching,
                                       const StudentId& student);

namespace detail {
bool feasible_matching_walk(const Instance& instance,
                            const std::function<bool(std::span<const SchoolIndex>)>& visit);
}  // namespace detail

/// Visits every capacity-respecting matching that leaves exactly
/// instance.forced_unassigned() students without a seat (the universe of
/// matchings reachable through the squared seat grid). The span is only valid
/// during the callback; return false to stop early.
template <class Visitor>
void for_each_feasible_matching(const Instance& instance, Visitor&& visit) {
  detail::feasible_matching_walk(instance, [&](std::span<const SchoolIndex> a) {
    if constexpr (std::is_void_v<decltype(visit(a))>) {
      visit(a);
      return true;
    } else {
      return static_cast<bool>(visit(a));
    }
  });
}

}  // namespace osm
