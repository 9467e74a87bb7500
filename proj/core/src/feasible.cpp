#include "osm/model.hpp"

namespace osm::detail {

namespace {

struct Walk {
  const Instance& instance;
  const std::function<bool(std::span<const SchoolIndex>)>& visit;
  std::vector<SchoolIndex> assignment;
  std::vector<int> remaining;
  std::size_t unassigned_budget;

  bool step(StudentIndex i) {
    if (i == assignment.size()) return visit(assignment);
    // The budget keeps the number of seatless students exact.
    for (SchoolIndex s = 0; s < remaining.size(); ++s) {
      if (remaining[s] == 0) continue;
      --remaining[s];
      assignment[i] = s;
      const bool keep_going = step(i + 1);
      ++remaining[s];
      if (!keep_going) return false;
    }
    if (unassigned_budget > 0) {
      --unassigned_budget;
      assignment[i] = kUnassigned;
      const bool keep_going = step(i + 1);
      ++unassigned_budget;
      if (!keep_going) return false;
    }
    return true;
  }
};

}  // namespace

bool feasible_matching_walk(const Instance& instance,
                            const std::function<bool(std::span<const SchoolIndex>)>& visit) {
  Walk walk{instance, visit, std::vector<SchoolIndex>(instance.num_students(), kUnassigned),
            std::vector<int>(instance.num_schools()), instance.forced_unassigned()};
  for (SchoolIndex s = 0; s < instance.num_schools(); ++s) walk.remaining[s] = instance.capacity(s);
  return walk.step(0);
}

}  // namespace osm::detail
