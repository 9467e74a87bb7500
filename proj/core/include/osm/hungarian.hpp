#pragma once

// Hungarian-method kernel over an exact ordered cost group.
//
// Steps 1-2 subtract row and column minima. Each later cycle finds a maximum
// matching on the zero cells (warm-started from the previous one) and the
// matching's Koenig cover, which is a minimum line cover of the zeros. If the
// cover has fewer than n lines, the smallest uncovered entry is subtracted
// from uncovered cells and added to doubly covered cells (Step 5), and the
// cycle repeats. The reduction is carried in row and column potentials, so a
// cell's reduced value is cost - u[row] - v[col].

#include <cstddef>
#include <cstdint>
#include <vector>

#include "osm/cost.hpp"
#include "osm/seat_grid.hpp"

namespace osm {

struct CoverLine {
  enum class Axis { kRow, kColumn };
  Axis axis;
  std::size_t index;
  bool operator==(const CoverLine&) const = default;
};

struct SolveTrace {
  std::size_t size = 0;
  /// Step 5 adjustments performed.
  std::size_t iterations = 0;
  /// Augmenting paths found after the greedy start.
  std::size_t augmentations = 0;
  /// Reduced matrix at termination, row-major. Non-negative everywhere and
  /// zero on every selected cell.
  std::vector<CostValue> final_reduced;
  /// Minimum zero cover at termination (n lines).
  std::vector<CoverLine> cover_lines;

  // Filled in by the mechanism pipeline.
  std::size_t optima_count = 1;
  bool enumeration_exhaustive = true;
  /// True when optimum enumeration was truncated and the kernel's own
  /// assignment was used instead of a uniform pick.
  bool fell_back_to_kernel = false;

  const CostValue& reduced_at(std::size_t row, std::size_t col) const {
    return final_reduced[row * size + col];
  }
  bool zero_at(std::size_t row, std::size_t col) const { return reduced_at(row, col).is_zero(); }
};

struct KernelSolution {
  /// assignment[row] = column.
  std::vector<std::size_t> assignment;
  CostValue total;
  SolveTrace trace;
};

/// Minimum-sum assignment of a square grid with non-negative entries.
/// Throws KernelError if the n^2 iteration cap is hit.
KernelSolution hungarian_solve(const SeatGrid& grid);

/// The matrix after Steps 1-2 only (row then column minimum subtraction).
std::vector<CostValue> reduce_rows_and_columns(const SeatGrid& grid);

}  // namespace osm
