#pragma once

// Cardinal utility transformations: strictly increasing, non-negative maps
// from ordinal ranks to additive costs.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "osm/cost.hpp"
#include "osm/model.hpp"

namespace osm {

/// f(r) = slope * r + intercept.
struct LinearTransform {
  Rational slope;
  Rational intercept;
};

/// f(r) = base^r. An empty base is filled in per instance (see resolved()).
struct ExponentialTransform {
  std::optional<std::uint64_t> base;
};

/// Explicit values for ranks 1..K.
struct TableTransform {
  std::map<int, Rational> values;
};

class UtilityTransform {
 public:
  using Kind = std::variant<LinearTransform, ExponentialTransform, TableTransform>;

  static UtilityTransform linear(Rational slope, Rational intercept);
  /// Linear(1, -1): the cost of a matching is its preference index.
  static UtilityTransform preference_index() { return linear(1, -1); }
  static UtilityTransform exponential(std::optional<std::uint64_t> base = std::nullopt);
  /// Validated eagerly: ranks must be 1..K, values strictly increasing, f(1) >= 0.
  static UtilityTransform table(std::map<int, Rational> values);
  /// Builds a table without validation, for probing check_strictly_increasing.
  /// apply() on an invalid table throws.
  static UtilityTransform unchecked_table(std::map<int, Rational> values);
  /// Two-column CSV "rank,value"; a non-numeric first line is a header.
  static UtilityTransform table_from_csv(const std::filesystem::path& path);

  /// Parses `linear:a=<rat>,b=<rat>`, `exp`, `exp:base=<int>`, `table:<path>`.
  /// Throws TransformError.
  static UtilityTransform parse(std::string_view spec);

  const Kind& kind() const { return kind_; }
  bool is_exponential() const { return std::holds_alternative<ExponentialTransform>(kind_); }
  /// Exponential transform still waiting for its automatic base.
  bool needs_resolution() const;
  /// Exponential base, if resolved.
  std::optional<std::uint64_t> base() const;
  /// Largest rank the transform is defined for (tables only).
  std::optional<int> max_rank() const;
  bool valid() const { return valid_; }

  /// Fills an automatic exponential base with max(seats, students) + 1.
  /// Other transforms are returned unchanged.
  UtilityTransform resolved(std::size_t seats, std::size_t students) const;
  UtilityTransform resolved(const Instance& instance) const {
    return resolved(instance.total_seats(), instance.num_students());
  }

  /// Rank-count vectors for exponential transforms whose base exceeds every
  /// possible per-rank count (the number of students); scalars otherwise.
  CostRealization preferred_realization(std::size_t students) const;

  /// Canonical spec-like text, e.g. "linear:a=1,b=-1" or "exp:base=4".
  std::string describe() const;

 private:
  explicit UtilityTransform(Kind kind, bool valid = true) : kind_(std::move(kind)), valid_(valid) {}
  Kind kind_;
  bool valid_ = true;
};

/// f(rank) in the requested realization. Throws TransformError for ranks
/// outside the domain, unresolved or invalid transforms, or a rank-count
/// realization of a non-exponential transform.
CostValue apply(const UtilityTransform& transform, int rank,
                CostRealization realization = CostRealization::kScalar);

/// f(rank) as an exact rational.
Rational apply_scalar(const UtilityTransform& transform, int rank);

/// Sum of f(rank) over students; unassigned students are charged
/// f(unassigned_rank). The transform must be resolved.
CostValue cost_of_matching(const UtilityTransform& transform, const Instance& instance,
                           const Matching& matching,
                           CostRealization realization = CostRealization::kScalar);

/// f(r) < f(r+1) for 1 <= r < max_rank and f(1) >= 0. An automatic
/// exponential base is checked as if it were 2, the smallest legal base.
bool check_strictly_increasing(const UtilityTransform& transform, int max_rank);

/// Highest rank a seat grid for this instance can charge: every completed
/// rank, plus each student's unassigned rank when seats run short.
int required_rank(const Instance& instance);

}  // namespace osm
