#include "osm/mechanism.hpp"

namespace osm {

Matching decode_assignment(const Instance& instance, const SeatGrid& grid,
                           const std::vector<std::size_t>& assignment) {
  std::vector<SchoolIndex> out(instance.num_students(), kUnassigned);
  for (std::size_t row = 0; row < grid.size(); ++row) {
    const auto student = grid.row_student(row);
    if (!student) continue;
    const auto& seat = grid.column_seat(assignment[row]);
    out[*student] = seat ? seat->school : kUnassigned;
  }
  return Matching::create(instance, std::move(out));
}

MechanismResult run_mechanism(const Instance& instance, const UtilityTransform& transform,
                              std::uint64_t seed, const MechanismOptions& options) {
  const SeatGrid grid = build_seat_grid(instance, transform, options.grid);
  KernelSolution solution = hungarian_solve(grid);
  OptimumSet optima = enumerate_grid_optima(instance, grid, solution, options.enumeration_cap);

  SolveTrace trace = std::move(solution.trace);
  trace.optima_count = optima.matchings.size();
  trace.enumeration_exhaustive = optima.exhaustive;

  Matching chosen = optima.exhaustive
                        ? optima.matchings[seeded_pick(seed, optima.matchings.size())]
                        : decode_assignment(instance, grid, solution.assignment);
  trace.fell_back_to_kernel = !optima.exhaustive;

  CostValue cost = solution.total;
  return MechanismResult{std::move(chosen), std::move(cost), std::move(trace), std::move(optima),
                         grid.transform()};
}

}  // namespace osm
