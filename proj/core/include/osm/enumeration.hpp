#pragma once

#include <cstdint>
#include <vector>

#include "osm/cost.hpp"
#include "osm/hungarian.hpp"
#include "osm/model.hpp"
#include "osm/seat_grid.hpp"
#include "osm/transform.hpp"

namespace osm {

inline constexpr std::size_t kDefaultEnumerationCap = 10000;

/// Distinct student -> school matchings sharing one cost, in ascending order.
struct OptimumSet {
  std::vector<Matching> matchings;
  CostValue shared_cost;
  /// False when more than `cap` matchings exist and only the first `cap` are listed.
  bool exhaustive = true;
};

/// All minimum-cost matchings, read off the perfect matchings of the zero
/// cells of the kernel's final reduced matrix. Seat-level assignments that
/// decode to the same student -> school map count once.
OptimumSet enumerate_min_cost(const Instance& instance, const UtilityTransform& transform,
                              std::size_t cap = kDefaultEnumerationCap,
                              const GridOptions& options = {});

/// Same, for an already built (and possibly modified) grid. The grid must
/// come from build_seat_grid for `instance`.
OptimumSet enumerate_grid_optima(const Instance& instance, const SeatGrid& grid,
                                 const KernelSolution& solution,
                                 std::size_t cap = kDefaultEnumerationCap);

inline constexpr std::size_t kRankMinimalStudentLimit = 10;

struct RankMinimalSet {
  std::vector<Matching> matchings;
  int rank = 0;
  bool exhaustive = true;
};

/// Lists feasible matchings in increasing exponential cost and keeps those
/// before the first rank change. Throws GuardExceeded above
/// kRankMinimalStudentLimit students.
RankMinimalSet enumerate_rank_minimal(const Instance& instance,
                                      std::size_t cap = kDefaultEnumerationCap);

enum class TieBreakCriterion { kMinVariance, kFewestViolatedStudents };

struct TieBreakPolicy {
  std::vector<TieBreakCriterion> criteria;
  std::uint64_t seed = 0;
};

/// Minimizers of each criterion in turn. Throws std::invalid_argument for an
/// empty set or a repeated criterion.
std::vector<Matching> tiebreak_candidates(const Instance& instance, const OptimumSet& optima,
                                          const std::vector<TieBreakCriterion>& criteria);

/// Keeps the minimizers of each criterion in turn, then draws uniformly with
/// the seed. Throws std::invalid_argument for an empty set or a repeated
/// criterion.
Matching tiebreak_select(const Instance& instance, const OptimumSet& optima,
                         const TieBreakPolicy& policy);

/// n^2 times the population variance of (rank - 1) over students; an exact
/// integer, so candidates compare without rounding.
BigInt scaled_rank_variance(const Instance& instance, const Matching& matching);

/// Uniform index in [0, count) drawn from the seed.
std::size_t seeded_pick(std::uint64_t seed, std::size_t count);

}  // namespace osm
