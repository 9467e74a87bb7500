#include "osm/model.hpp"

#include <sstream>
#include <unordered_set>

namespace osm {

namespace {

std::string join_path(std::initializer_list<std::string> parts) {
  std::string out;
  for (const auto& p : parts) {
    out += '/';
    out += p;
  }
  return out;
}

std::string summarize(const ValidationResult& result) {
  std::ostringstream os;
  os << "invalid problem (" << result.violations.size() << " violation"
     << (result.violations.size() == 1 ? "" : "s") << ")";
  for (const auto& v : result.violations) os << "\n  " << v.path << ": " << v.message;
  return os.str();
}

}  // namespace

ValidationFailed::ValidationFailed(ValidationResult result)
    : ValidationError(summarize(result)), result_(std::move(result)) {}

ValidationResult validate_problem(const SchoolChoiceProblem& problem) {
  ValidationResult result;
  auto add = [&](Violation::Kind kind, std::string path, std::string message) {
    result.violations.push_back({kind, std::move(path), std::move(message)});
  };

  if (problem.students.empty()) add(Violation::Kind::kNoStudents, "/students", "no students");
  if (problem.schools.empty()) add(Violation::Kind::kNoSchools, "/schools", "no schools");

  std::unordered_set<std::string> student_ids;
  for (std::size_t i = 0; i < problem.students.size(); ++i) {
    const auto& id = problem.students[i].id.value;
    auto path = join_path({"students", std::to_string(i), "id"});
    if (id.empty()) {
      add(Violation::Kind::kEmptyId, path, "student id is empty");
    } else if (!student_ids.insert(id).second) {
      add(Violation::Kind::kDuplicateStudent, path, "duplicate student id '" + id + "'");
    }
  }

  std::unordered_set<std::string> school_ids;
  for (std::size_t s = 0; s < problem.schools.size(); ++s) {
    const auto& school = problem.schools[s];
    auto path = join_path({"schools", std::to_string(s), "id"});
    if (school.id.value.empty()) {
      add(Violation::Kind::kEmptyId, path, "school id is empty");
    } else if (!school_ids.insert(school.id.value).second) {
      add(Violation::Kind::kDuplicateSchool, path,
          "duplicate school id '" + school.id.value + "'");
    }
    if (school.capacity < 1) {
      add(Violation::Kind::kBadCapacity, join_path({"schools", std::to_string(s), "capacity"}),
          "school '" + school.id.value + "' has capacity " + std::to_string(school.capacity) +
              "; capacity must be at least 1");
    }
  }

  for (std::size_t i = 0; i < problem.students.size(); ++i) {
    const auto& student = problem.students[i];
    std::unordered_set<std::string> seen;
    const auto& tiers = student.preferences.tiers;
    for (std::size_t t = 0; t < tiers.size(); ++t) {
      auto tier_path = join_path({"students", std::to_string(i), "preferences", std::to_string(t)});
      if (tiers[t].empty()) {
        add(Violation::Kind::kEmptyTier, tier_path,
            "student '" + student.id.value + "' has an empty preference tier");
      }
      for (std::size_t k = 0; k < tiers[t].size(); ++k) {
        const auto& school = tiers[t][k].value;
        auto path = tier_path + "/" + std::to_string(k);
        if (!school_ids.contains(school)) {
          add(Violation::Kind::kUnknownSchool, path,
              "student '" + student.id.value + "' ranks unknown school '" + school + "'");
        } else if (!seen.insert(school).second) {
          add(Violation::Kind::kRepeatedSchool, path,
              "student '" + student.id.value + "' ranks school '" + school + "' more than once");
        }
      }
    }
  }

  for (std::size_t s = 0; s < problem.schools.size(); ++s) {
    const auto& school = problem.schools[s];
    std::unordered_set<std::string> seen;
    const auto& tiers = school.priorities.tiers;
    for (std::size_t t = 0; t < tiers.size(); ++t) {
      auto tier_path = join_path({"schools", std::to_string(s), "priorities", std::to_string(t)});
      if (tiers[t].empty()) {
        add(Violation::Kind::kEmptyTier, tier_path,
            "school '" + school.id.value + "' has an empty priority tier");
      }
      for (std::size_t k = 0; k < tiers[t].size(); ++k) {
        const auto& student = tiers[t][k].value;
        auto path = tier_path + "/" + std::to_string(k);
        if (!student_ids.contains(student)) {
          add(Violation::Kind::kUnknownStudent, path,
              "school '" + school.id.value + "' lists unknown student '" + student + "'");
        } else if (!seen.insert(student).second) {
          add(Violation::Kind::kRepeatedStudent, path,
              "school '" + school.id.value + "' lists student '" + student + "' more than once");
        }
      }
    }
  }
  return result;
}

PreferenceProfile complete_preferences(const PreferenceProfile& profile,
                                       const std::vector<SchoolId>& all_schools) {
  std::set<SchoolId> universe(all_schools.begin(), all_schools.end());
  std::set<SchoolId> ranked;
  for (const auto& tier : profile.tiers) {
    for (const auto& school : tier) {
      if (!universe.contains(school)) {
        throw UnknownId("profile references unknown school '" + school.value + "'");
      }
      ranked.insert(school);
    }
  }
  PreferenceProfile out = profile;
  std::vector<SchoolId> rest;
  for (const auto& school : all_schools) {
    if (!ranked.contains(school)) rest.push_back(school);
  }
  if (!rest.empty()) out.tiers.push_back(std::move(rest));
  return out;
}

RankingFunction ranking_of(const SchoolChoiceProblem& problem, const StudentId& student) {
  auto it = std::find_if(problem.students.begin(), problem.students.end(),
                         [&](const Student& st) { return st.id == student; });
  if (it == problem.students.end()) throw UnknownId("unknown student '" + student.value + "'");

  RankingFunction ranks;
  const auto& tiers = it->preferences.tiers;
  for (std::size_t t = 0; t < tiers.size(); ++t) {
    for (const auto& school : tiers[t]) ranks[school] = static_cast<int>(t + 1);
  }
  for (const auto& school : problem.schools) {
    if (!ranks.contains(school.id)) {
      throw ValidationError("profile of student '" + student.value +
                            "' is incomplete (school '" + school.id.value + "' unranked)");
    }
  }
  return ranks;
}

Instance Instance::from_problem(const SchoolChoiceProblem& problem) {
  auto result = validate_problem(problem);
  if (!result.ok()) throw ValidationFailed(std::move(result));

  Instance inst;
  inst.problem_ = problem;
  std::vector<SchoolId> all;
  all.reserve(problem.schools.size());
  for (const auto& s : problem.schools) all.push_back(s.id);
  for (auto& st : inst.problem_.students) {
    st.preferences = complete_preferences(st.preferences, all);
  }
  inst.index();
  return inst;
}

void Instance::index() {
  const std::size_t n = num_students();
  const std::size_t m = num_schools();
  student_lookup_.clear();
  school_lookup_.clear();
  for (std::size_t i = 0; i < n; ++i) student_lookup_.emplace(problem_.students[i].id.value, i);
  for (std::size_t s = 0; s < m; ++s) school_lookup_.emplace(problem_.schools[s].id.value, s);

  total_seats_ = 0;
  for (const auto& s : problem_.schools) total_seats_ += static_cast<std::size_t>(s.capacity);

  ranks_.assign(n * m, 0);
  unassigned_rank_.assign(n, 1);
  max_rank_ = 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& tiers = problem_.students[i].preferences.tiers;
    for (std::size_t t = 0; t < tiers.size(); ++t) {
      for (const auto& school : tiers[t]) {
        ranks_[i * m + school_lookup_.at(school.value)] = static_cast<int>(t + 1);
      }
    }
    const int worst = static_cast<int>(tiers.size());
    unassigned_rank_[i] = worst + 1;
    max_rank_ = std::max(max_rank_, worst);
  }

  priority_tiers_.assign(m * n, 0);
  for (std::size_t s = 0; s < m; ++s) {
    const auto& tiers = problem_.schools[s].priorities.tiers;
    std::fill_n(priority_tiers_.begin() + static_cast<std::ptrdiff_t>(s * n), n, tiers.size());
    for (std::size_t t = 0; t < tiers.size(); ++t) {
      for (const auto& student : tiers[t]) {
        priority_tiers_[s * n + student_lookup_.at(student.value)] = t;
      }
    }
  }
}

std::optional<StudentIndex> Instance::find_student(std::string_view id) const {
  auto it = student_lookup_.find(std::string(id));
  if (it == student_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<SchoolIndex> Instance::find_school(std::string_view id) const {
  auto it = school_lookup_.find(std::string(id));
  if (it == school_lookup_.end()) return std::nullopt;
  return it->second;
}

StudentIndex Instance::student_index(std::string_view id) const {
  if (auto i = find_student(id)) return *i;
  throw UnknownId("unknown student '" + std::string(id) + "'");
}

SchoolIndex Instance::school_index(std::string_view id) const {
  if (auto s = find_school(id)) return *s;
  throw UnknownId("unknown school '" + std::string(id) + "'");
}

Instance Instance::with_preferences(StudentIndex i, const PreferenceProfile& profile) const {
  SchoolChoiceProblem copy = problem_;
  copy.students.at(i).preferences = profile;
  return from_problem(copy);
}

Matching Matching::create(const Instance& instance, std::vector<SchoolIndex> assignment) {
  if (assignment.size() != instance.num_students()) {
    throw InvalidMatching("matching covers " + std::to_string(assignment.size()) +
                          " students, instance has " + std::to_string(instance.num_students()));
  }
  std::vector<int> load(instance.num_schools(), 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const SchoolIndex s = assignment[i];
    if (s == kUnassigned) continue;
    if (s >= instance.num_schools()) {
      throw InvalidMatching("student '" + instance.student_id(i).value +
                            "' assigned to out-of-range school index " + std::to_string(s));
    }
    if (++load[s] > instance.capacity(s)) {
      throw InvalidMatching("school '" + instance.school_id(s).value + "' over capacity " +
                            std::to_string(instance.capacity(s)));
    }
  }
  return Matching(std::move(assignment));
}

Matching Matching::from_ids(const Instance& instance,
                            const std::map<std::string, std::optional<std::string>>& by_id) {
  std::vector<SchoolIndex> assignment(instance.num_students(), kUnassigned);
  for (const auto& [student, school] : by_id) {
    auto i = instance.find_student(student);
    if (!i) throw InvalidMatching("matching names unknown student '" + student + "'");
    if (!school) continue;
    auto s = instance.find_school(*school);
    if (!s) throw InvalidMatching("matching names unknown school '" + *school + "'");
    assignment[*i] = *s;
  }
  return create(instance, std::move(assignment));
}

void Matching::check_fits(const Instance& instance) const {
  // Re-running the constructor checks covers size, range and capacity.
  (void)create(instance, assignment_);
}

std::optional<SchoolId> matched_school(const Instance& instance, const Matching& matching,
                                       const StudentId& student) {
  const StudentIndex i = instance.student_index(student.value);
  if (i >= matching.size()) throw InvalidMatching("matching does not cover the instance");
  const SchoolIndex s = matching[i];
  if (s == kUnassigned) return std::nullopt;
  return instance.school_id(s);
}

}  // namespace osm
