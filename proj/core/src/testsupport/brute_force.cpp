#include "osm/testsupport/brute_force.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace osm::testsupport {

OptimumSet brute_force_optima(const SchoolChoiceProblem& problem, const UtilityTransform& transform) {
  const Instance instance = Instance::from_problem(problem);
  const std::size_t n = problem.students.size();
  const std::size_t m = problem.schools.size();

  std::vector<SchoolIndex> seats;  // school of each physical seat
  for (SchoolIndex s = 0; s < m; ++s) {
    seats.insert(seats.end(), static_cast<std::size_t>(problem.schools[s].capacity), s);
  }
  const std::size_t width = std::max(n, seats.size());
  if (width > kBruteForceGridLimit) {
    throw GuardExceeded("brute-force optima are limited to " + std::to_string(kBruteForceGridLimit) +
                        " seats and students");
  }
  // Seats beyond the real ones stand for "no school".
  seats.resize(width, kUnassigned);

  // Ranks straight from the completed tiers.
  std::vector<SchoolId> all_schools;
  for (const auto& school : problem.schools) all_schools.push_back(school.id);
  std::vector<std::map<SchoolIndex, int>> rank(n);
  std::vector<int> unassigned(n);
  for (StudentIndex i = 0; i < n; ++i) {
    const auto full = complete_preferences(problem.students[i].preferences, all_schools);
    for (std::size_t t = 0; t < full.tiers.size(); ++t) {
      for (const auto& id : full.tiers[t]) {
        const auto it = std::find(all_schools.begin(), all_schools.end(), id);
        rank[i][static_cast<SchoolIndex>(it - all_schools.begin())] = static_cast<int>(t + 1);
      }
    }
    unassigned[i] = static_cast<int>(full.tiers.size()) + 1;
  }

  std::size_t total_seats = 0;
  for (const auto& school : problem.schools) total_seats += static_cast<std::size_t>(school.capacity);
  const UtilityTransform f = transform.resolved(total_seats, n);

  std::set<std::vector<SchoolIndex>> seen;
  std::vector<SchoolIndex> current(n);
  std::vector<bool> used(width, false);
  auto walk = [&](auto&& self, StudentIndex i) -> void {
    if (i == n) {
      seen.insert(current);
      return;
    }
    for (std::size_t col = 0; col < width; ++col) {
      if (used[col]) continue;
      used[col] = true;
      current[i] = seats[col];
      self(self, i + 1);
      used[col] = false;
    }
  };
  walk(walk, 0);

  OptimumSet out;
  std::optional<Rational> best;
  std::vector<std::vector<SchoolIndex>> winners;
  for (const auto& a : seen) {
    Rational cost = 0;
    for (StudentIndex i = 0; i < n; ++i) {
      cost += apply_scalar(f, a[i] == kUnassigned ? unassigned[i] : rank[i].at(a[i]));
    }
    if (!best || cost < *best) {
      best = cost;
      winners.clear();
    }
    if (cost == *best) winners.push_back(a);
  }
  for (auto& a : winners) out.matchings.push_back(Matching::create(instance, std::move(a)));
  std::sort(out.matchings.begin(), out.matchings.end());
  out.shared_cost = CostValue(best.value_or(0));
  return out;
}

}  // namespace osm::testsupport
