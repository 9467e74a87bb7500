#pragma once

// The squared, capacity-expanded cost matrix the assignment kernel runs on.
//
// Rows are students in instance order followed by dummy rows (open seats).
// Columns are seats, school by school in instance order with one column per
// unit of capacity, followed by dummy columns (no school).

#include <cstddef>
#include <optional>
#include <vector>

#include "osm/cost.hpp"
#include "osm/model.hpp"
#include "osm/transform.hpp"

namespace osm {

inline constexpr std::size_t kDefaultMaxSeats = 512;

struct SeatRef {
  SchoolIndex school;
  int seat;  // 0-based ordinal within the school
  bool operator==(const SeatRef&) const = default;
};

class SeatGrid {
 public:
  SeatGrid(std::size_t size, std::vector<CostValue> cells, std::size_t real_rows,
           std::vector<std::optional<SeatRef>> columns, UtilityTransform transform);

  /// A bare square matrix; every row is "real" and column c maps to school c.
  static SeatGrid from_matrix(std::size_t size, std::vector<CostValue> cells);

  std::size_t size() const { return size_; }
  const CostValue& at(std::size_t row, std::size_t col) const { return cells_[row * size_ + col]; }
  CostValue& at(std::size_t row, std::size_t col) { return cells_[row * size_ + col]; }
  const std::vector<CostValue>& cells() const { return cells_; }

  /// Student behind a row, or nullopt for a dummy row.
  std::optional<StudentIndex> row_student(std::size_t row) const {
    return row < real_rows_ ? std::optional<StudentIndex>(row) : std::nullopt;
  }
  /// Seat behind a column, or nullopt for a dummy column.
  const std::optional<SeatRef>& column_seat(std::size_t col) const { return columns_[col]; }
  std::size_t real_rows() const { return real_rows_; }

  const UtilityTransform& transform() const { return transform_; }

 private:
  std::size_t size_;
  std::vector<CostValue> cells_;
  std::size_t real_rows_;
  std::vector<std::optional<SeatRef>> columns_;
  UtilityTransform transform_;
};

struct GridOptions {
  /// Defaults to transform.preferred_realization(students).
  std::optional<CostRealization> realization;
  /// Largest grid side accepted; larger instances throw GuardExceeded.
  std::size_t max_seats = kDefaultMaxSeats;
};

/// Real cells hold f(rank); a student's dummy columns hold f(unassigned rank);
/// dummy rows hold the group zero everywhere. An automatic exponential base is
/// resolved against the instance first. Throws TransformError if f is not
/// strictly increasing over the ranks the grid needs.
SeatGrid build_seat_grid(const Instance& instance, const UtilityTransform& transform,
                         const GridOptions& options = {});

}  // namespace osm
