#include "osm/enumeration.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "osm/analysis.hpp"

namespace osm {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Depth-first search over students, fixing each one to a school (or to "no
// school") while keeping a perfect matching of the zero cells that respects
// every fixed choice. A choice is accepted only if such a matching exists, so
// every leaf is an optimum and no branch dead-ends.
class ZeroSubgraphEnumerator {
 public:
  ZeroSubgraphEnumerator(const Instance& instance, const SeatGrid& grid,
                         const KernelSolution& solution, std::size_t cap)
      : instance_(instance),
        n_(grid.size()),
        students_(grid.real_rows()),
        unassigned_group_(instance.num_schools()),
        cap_(cap),
        zero_(n_ * n_),
        group_(n_),
        fixed_(n_, kNone),
        row_match_(solution.assignment),
        col_match_(n_, kNone),
        visited_(n_, 0) {
    for (std::size_t c = 0; c < n_; ++c) {
      const auto& seat = grid.column_seat(c);
      group_[c] = seat ? seat->school : unassigned_group_;
    }
    for (std::size_t r = 0; r < n_; ++r) {
      for (std::size_t c = 0; c < n_; ++c) zero_[r * n_ + c] = solution.trace.zero_at(r, c);
      col_match_[row_match_[r]] = r;
    }
  }

  OptimumSet run(const CostValue& cost) {
    search(0);
    OptimumSet out;
    std::sort(found_.begin(), found_.end());
    out.matchings = std::move(found_);
    out.shared_cost = cost;
    out.exhaustive = !truncated_;
    return out;
  }

 private:
  bool allowed(std::size_t r, std::size_t c) const {
    return zero_[r * n_ + c] && (fixed_[r] == kNone || group_[c] == fixed_[r]);
  }

  // Returns false to stop the whole search.
  bool search(std::size_t k) {
    if (k == students_) {
      if (found_.size() == cap_) {
        truncated_ = true;
        return false;
      }
      std::vector<SchoolIndex> assignment(students_);
      for (std::size_t i = 0; i < students_; ++i) {
        assignment[i] = fixed_[i] == unassigned_group_ ? kUnassigned : fixed_[i];
      }
      found_.push_back(Matching::create(instance_, std::move(assignment)));
      return true;
    }
    std::set<std::size_t> groups;
    for (std::size_t c = 0; c < n_; ++c) {
      if (zero_[k * n_ + c]) groups.insert(group_[c]);
    }
    for (std::size_t g : groups) {
      if (!fix(k, g)) continue;
      if (!search(k + 1)) return false;
      fixed_[k] = kNone;
    }
    return true;
  }

  bool fix(std::size_t k, std::size_t g) {
    const std::size_t current = row_match_[k];
    fixed_[k] = g;
    if (group_[current] == g) return true;
    row_match_[k] = kNone;
    col_match_[current] = kNone;
    std::fill(visited_.begin(), visited_.end(), 0);
    if (augment(k)) return true;
    row_match_[k] = current;
    col_match_[current] = k;
    fixed_[k] = kNone;
    return false;
  }

  bool augment(std::size_t r) {
    for (std::size_t c = 0; c < n_; ++c) {
      if (visited_[c] || !allowed(r, c)) continue;
      visited_[c] = 1;
      if (col_match_[c] == kNone || augment(col_match_[c])) {
        row_match_[r] = c;
        col_match_[c] = r;
        return true;
      }
    }
    return false;
  }

  const Instance& instance_;
  std::size_t n_;
  std::size_t students_;
  std::size_t unassigned_group_;
  std::size_t cap_;
  std::vector<char> zero_;
  std::vector<std::size_t> group_;
  std::vector<std::size_t> fixed_;
  std::vector<std::size_t> row_match_;
  std::vector<std::size_t> col_match_;
  std::vector<char> visited_;
  std::vector<Matching> found_;
  bool truncated_ = false;
};

RankCounts rank_key(const Instance& instance, std::span<const SchoolIndex> assignment,
                    std::uint64_t base) {
  RankCounts key(base);
  for (StudentIndex i = 0; i < assignment.size(); ++i) key.add(instance.rank_of(i, assignment[i]), 1);
  return key;
}

int assignment_rank(const Instance& instance, std::span<const SchoolIndex> assignment) {
  int top = 0;
  for (StudentIndex i = 0; i < assignment.size(); ++i) {
    top = std::max(top, instance.rank_of(i, assignment[i]));
  }
  return top;
}

}  // namespace

OptimumSet enumerate_grid_optima(const Instance& instance, const SeatGrid& grid,
                                 const KernelSolution& solution, std::size_t cap) {
  if (grid.real_rows() != instance.num_students()) {
    throw std::invalid_argument("seat grid was not built for this instance");
  }
  ZeroSubgraphEnumerator enumerator(instance, grid, solution, cap);
  return enumerator.run(solution.total);
}

OptimumSet enumerate_min_cost(const Instance& instance, const UtilityTransform& transform,
                              std::size_t cap, const GridOptions& options) {
  const SeatGrid grid = build_seat_grid(instance, transform, options);
  const KernelSolution solution = hungarian_solve(grid);
  return enumerate_grid_optima(instance, grid, solution, cap);
}

RankMinimalSet enumerate_rank_minimal(const Instance& instance, std::size_t cap) {
  if (instance.num_students() > kRankMinimalStudentLimit) {
    throw GuardExceeded("rank-minimal listing is limited to " +
                        std::to_string(kRankMinimalStudentLimit) + " students");
  }
  // With base above the student count, exponential cost orders matchings by
  // rank first, so the sorted list changes rank exactly once per rank level.
  const std::uint64_t base = static_cast<std::uint64_t>(instance.num_students()) + 1;

  // The head of the sorted list: its cost and rank, and the cheapest cost
  // among matchings of any other rank (where the list first changes rank).
  std::optional<RankCounts> head;
  int head_rank = 0;
  for_each_feasible_matching(instance, [&](std::span<const SchoolIndex> a) {
    RankCounts key = rank_key(instance, a, base);
    if (!head || key < *head) {
      head = std::move(key);
      head_rank = assignment_rank(instance, a);
    }
  });
  std::optional<RankCounts> change;
  for_each_feasible_matching(instance, [&](std::span<const SchoolIndex> a) {
    if (assignment_rank(instance, a) == head_rank) return;
    RankCounts key = rank_key(instance, a, base);
    if (!change || key < *change) change = std::move(key);
  });

  RankMinimalSet out;
  out.rank = head_rank;
  std::vector<std::pair<RankCounts, Matching>> listed;
  for_each_feasible_matching(instance, [&](std::span<const SchoolIndex> a) {
    RankCounts key = rank_key(instance, a, base);
    if (change && !(key < *change)) return true;
    if (listed.size() == cap) {
      out.exhaustive = false;
      return false;
    }
    listed.emplace_back(std::move(key),
                        Matching::create(instance, std::vector<SchoolIndex>(a.begin(), a.end())));
    return true;
  });
  std::sort(listed.begin(), listed.end());
  for (auto& [key, matching] : listed) out.matchings.push_back(std::move(matching));
  return out;
}

BigInt scaled_rank_variance(const Instance& instance, const Matching& matching) {
  const std::size_t n = matching.size();
  BigInt sum = 0;
  BigInt sum_sq = 0;
  for (StudentIndex i = 0; i < n; ++i) {
    const int x = instance.rank_of(i, matching[i]) - 1;
    sum += x;
    sum_sq += x * x;
  }
  return BigInt(n) * sum_sq - sum * sum;
}

std::size_t seeded_pick(std::uint64_t seed, std::size_t count) {
  if (count == 0) throw std::invalid_argument("cannot pick from an empty set");
  std::mt19937_64 rng(seed);
  return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
}

std::vector<Matching> tiebreak_candidates(const Instance& instance, const OptimumSet& optima,
                                          const std::vector<TieBreakCriterion>& criteria) {
  if (optima.matchings.empty()) throw std::invalid_argument("tie-break over an empty optimum set");
  std::set<TieBreakCriterion> seen;
  for (auto c : criteria) {
    if (!seen.insert(c).second) throw std::invalid_argument("tie-break criterion repeated");
  }

  std::vector<Matching> candidates = optima.matchings;
  for (auto criterion : criteria) {
    std::vector<BigInt> score;
    score.reserve(candidates.size());
    for (const auto& m : candidates) {
      if (criterion == TieBreakCriterion::kMinVariance) {
        score.push_back(scaled_rank_variance(instance, m));
      } else {
        score.emplace_back(priority_violations(instance, m).violated_students.size());
      }
    }
    const BigInt best = *std::min_element(score.begin(), score.end());
    std::vector<Matching> kept;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      if (score[k] == best) kept.push_back(std::move(candidates[k]));
    }
    candidates = std::move(kept);
  }
  return candidates;
}

Matching tiebreak_select(const Instance& instance, const OptimumSet& optima,
                         const TieBreakPolicy& policy) {
  const auto candidates = tiebreak_candidates(instance, optima, policy.criteria);
  return candidates[seeded_pick(policy.seed, candidates.size())];
}

}  // namespace osm
