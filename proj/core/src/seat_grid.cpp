#include "osm/seat_grid.hpp"

namespace osm {

SeatGrid::SeatGrid(std::size_t size, std::vector<CostValue> cells, std::size_t real_rows,
                   std::vector<std::optional<SeatRef>> columns, UtilityTransform transform)
    : size_(size),
      cells_(std::move(cells)),
      real_rows_(real_rows),
      columns_(std::move(columns)),
      transform_(std::move(transform)) {
  if (cells_.size() != size_ * size_) throw std::invalid_argument("seat grid is not square");
  if (columns_.size() != size_) throw std::invalid_argument("seat grid column map has wrong size");
  if (real_rows_ > size_) throw std::invalid_argument("seat grid has more students than rows");
}

SeatGrid SeatGrid::from_matrix(std::size_t size, std::vector<CostValue> cells) {
  std::vector<std::optional<SeatRef>> columns;
  columns.reserve(size);
  for (std::size_t c = 0; c < size; ++c) columns.push_back(SeatRef{c, 0});
  return SeatGrid(size, std::move(cells), size, std::move(columns),
                  UtilityTransform::preference_index());
}

SeatGrid build_seat_grid(const Instance& instance, const UtilityTransform& transform,
                         const GridOptions& options) {
  const std::size_t n = instance.grid_size();
  if (n > options.max_seats) {
    throw GuardExceeded("seat grid of size " + std::to_string(n) + " exceeds the limit of " +
                        std::to_string(options.max_seats));
  }
  const UtilityTransform f = transform.resolved(instance);
  const int top = required_rank(instance);
  if (!check_strictly_increasing(f, top)) {
    throw TransformError("transform " + f.describe() +
                         " is not strictly increasing and non-negative on ranks 1.." +
                         std::to_string(top));
  }
  const CostRealization realization =
      options.realization.value_or(f.preferred_realization(instance.num_students()));

  std::vector<std::optional<SeatRef>> columns;
  columns.reserve(n);
  for (SchoolIndex s = 0; s < instance.num_schools(); ++s) {
    for (int k = 0; k < instance.capacity(s); ++k) columns.push_back(SeatRef{s, k});
  }
  while (columns.size() < n) columns.emplace_back(std::nullopt);

  // One evaluation per distinct rank; cells copy from the cache.
  std::vector<CostValue> by_rank(static_cast<std::size_t>(top) + 1);
  for (int r = 1; r <= top; ++r) by_rank[static_cast<std::size_t>(r)] = apply(f, r, realization);
  const CostValue zero = CostValue::zero(realization, f.base().value_or(0));

  std::vector<CostValue> cells(n * n, zero);
  for (StudentIndex i = 0; i < instance.num_students(); ++i) {
    for (std::size_t c = 0; c < n; ++c) {
      const auto& seat = columns[c];
      const int rank = seat ? instance.rank(i, seat->school) : instance.unassigned_rank(i);
      cells[i * n + c] = by_rank[static_cast<std::size_t>(rank)];
    }
  }
  return SeatGrid(n, std::move(cells), instance.num_students(), std::move(columns), f);
}

}  // namespace osm
