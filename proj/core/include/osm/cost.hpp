#pragma once

// Exact cost values. Two realizations of one totally ordered additive group:
//
//  * Scalar: an arbitrary-precision rational.
//  * RankCounts: a vector of per-rank counts ordered lexicographically from
//    the highest rank downward. With base B it stands for sum_r count[r] * B^r
//    and orders identically to that sum whenever every count stays below B,
//    without ever materializing B^r.

#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace osm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact textual form: integers and terminating fractions as plain decimals
/// ("15", "-2.5"), anything else as "p/q".
std::string to_decimal_string(const Rational& value);
/// Inverse of to_decimal_string. Also accepts "p/q" with decimal parts.
/// Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

class RankCounts {
 public:
  RankCounts() = default;
  explicit RankCounts(std::uint64_t base) : base_(base) {}

  /// One count at `rank` (1-based).
  static RankCounts unit(std::uint64_t base, int rank);

  std::uint64_t base() const { return base_; }
  std::int64_t count(int rank) const;
  /// Highest rank with a non-zero count; 0 for the zero element.
  int top_rank() const { return static_cast<int>(counts_.size()); }
  bool is_zero() const { return counts_.empty(); }
  /// Counts indexed by rank - 1, trailing zeros trimmed.
  const std::vector<std::int64_t>& counts() const { return counts_; }

  void add(int rank, std::int64_t amount);
  RankCounts& operator+=(const RankCounts& other);
  RankCounts& operator-=(const RankCounts& other);
  RankCounts operator-() const;

  /// sum_r count[r] * base^r, exactly.
  BigInt evaluate() const;

  std::strong_ordering operator<=>(const RankCounts& other) const;
  bool operator==(const RankCounts& other) const { return counts_ == other.counts_; }

 private:
  void trim();
  void adopt_base(std::uint64_t other);

  std::uint64_t base_ = 0;
  std::vector<std::int64_t> counts_;
};

enum class CostRealization { kScalar, kRankCounts };

class CostValue {
 public:
  CostValue() = default;  // scalar zero
  CostValue(Rational value) : value_(std::move(value)) {}    // NOLINT(google-explicit-constructor)
  CostValue(RankCounts value) : value_(std::move(value)) {}  // NOLINT(google-explicit-constructor)

  static CostValue zero(CostRealization realization, std::uint64_t base = 0);

  CostRealization realization() const {
    return std::holds_alternative<Rational>(value_) ? CostRealization::kScalar
                                                    : CostRealization::kRankCounts;
  }
  bool is_scalar() const { return realization() == CostRealization::kScalar; }
  const Rational& scalar() const { return std::get<Rational>(value_); }
  const RankCounts& counts() const { return std::get<RankCounts>(value_); }

  bool is_zero() const;
  CostValue zero_like() const;

  /// Exact scalar value; RankCounts are evaluated against their base.
  Rational to_rational() const;
  /// to_decimal_string(to_rational()).
  std::string to_string() const;

  CostValue& operator+=(const CostValue& other);
  CostValue& operator-=(const CostValue& other);
  friend CostValue operator+(CostValue a, const CostValue& b) { return a += b; }
  friend CostValue operator-(CostValue a, const CostValue& b) { return a -= b; }

  /// Both operands must share a realization (zero of either kind mixes freely).
  std::strong_ordering operator<=>(const CostValue& other) const;
  bool operator==(const CostValue& other) const;

 private:
  std::variant<Rational, RankCounts> value_;
};

}  // namespace osm
