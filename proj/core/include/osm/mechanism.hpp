#pragma once

// The full pipeline: complete profiles, expand capacities into seats, pad to
// a square grid, solve, enumerate all optima and pick one uniformly with the
// seed.

#include <cstdint>

#include "osm/enumeration.hpp"
#include "osm/hungarian.hpp"
#include "osm/model.hpp"
#include "osm/seat_grid.hpp"
#include "osm/transform.hpp"

namespace osm {

struct MechanismOptions {
  GridOptions grid;
  std::size_t enumeration_cap = kDefaultEnumerationCap;
};

struct MechanismResult {
  Matching matching;
  CostValue cost;
  SolveTrace trace;
  OptimumSet optima;
  /// The transform with any automatic base filled in.
  UtilityTransform transform;
};

/// Decodes a kernel assignment: dummy-column rows become unassigned students,
/// dummy rows (open seats) are dropped.
Matching decode_assignment(const Instance& instance, const SeatGrid& grid,
                           const std::vector<std::size_t>& assignment);

MechanismResult run_mechanism(const Instance& instance, const UtilityTransform& transform,
                              std::uint64_t seed = 0, const MechanismOptions& options = {});

}  // namespace osm
