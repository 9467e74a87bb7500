#include "osm/cost.hpp"

#include <stdexcept>

namespace osm {

namespace {

bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Number of decimal digits needed after the point, or -1 if the expansion
// does not terminate.
int terminating_digits(BigInt den) {
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return -1;
  return std::max(twos, fives);
}

BigInt pow10(int k) {
  BigInt out = 1;
  for (int i = 0; i < k; ++i) out *= 10;
  return out;
}

Rational parse_decimal(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }
  BigInt digits = 0;
  int scale = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      seen_digit = true;
      if (seen_point) ++scale;
    } else {
      throw std::invalid_argument("malformed number '" + text + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("malformed number '" + text + "'");
  Rational out(digits, pow10(scale));
  return negative ? Rational(-out) : out;
}

}  // namespace

std::string to_decimal_string(const Rational& value) {
  if (is_integer(value)) return numerator(value).str();
  const int digits = terminating_digits(denominator(value));
  if (digits < 0) return numerator(value).str() + "/" + denominator(value).str();

  const bool negative = value < 0;
  const Rational magnitude = negative ? Rational(-value) : value;
  const BigInt scaled = numerator(magnitude) * pow10(digits) / denominator(magnitude);
  std::string text = scaled.str();
  if (static_cast<int>(text.size()) <= digits) {
    text.insert(0, static_cast<std::size_t>(digits) + 1 - text.size(), '0');
  }
  text.insert(text.size() - static_cast<std::size_t>(digits), ".");
  return negative ? "-" + text : text;
}

Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  const Rational num = parse_decimal(text.substr(0, slash));
  const Rational den = parse_decimal(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
  return num / den;
}

RankCounts RankCounts::unit(std::uint64_t base, int rank) {
  RankCounts out(base);
  out.add(rank, 1);
  return out;
}

std::int64_t RankCounts::count(int rank) const {
  if (rank < 1 || rank > static_cast<int>(counts_.size())) return 0;
  return counts_[static_cast<std::size_t>(rank - 1)];
}

void RankCounts::add(int rank, std::int64_t amount) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  const auto idx = static_cast<std::size_t>(rank - 1);
  if (idx >= counts_.size()) counts_.resize(idx + 1, 0);
  counts_[idx] += amount;
  trim();
}

void RankCounts::adopt_base(std::uint64_t other) {
  if (base_ == 0) {
    base_ = other;
  } else if (other != 0 && other != base_) {
    throw std::logic_error("rank-count values with different bases");
  }
}

RankCounts& RankCounts::operator+=(const RankCounts& other) {
  adopt_base(other.base_);
  if (other.counts_.size() > counts_.size()) counts_.resize(other.counts_.size(), 0);
  for (std::size_t k = 0; k < other.counts_.size(); ++k) counts_[k] += other.counts_[k];
  trim();
  return *this;
}

RankCounts& RankCounts::operator-=(const RankCounts& other) {
  adopt_base(other.base_);
  if (other.counts_.size() > counts_.size()) counts_.resize(other.counts_.size(), 0);
  for (std::size_t k = 0; k < other.counts_.size(); ++k) counts_[k] -= other.counts_[k];
  trim();
  return *this;
}

RankCounts RankCounts::operator-() const {
  RankCounts out(base_);
  out -= *this;
  return out;
}

void RankCounts::trim() {
  while (!counts_.empty() && counts_.back() == 0) counts_.pop_back();
}

BigInt RankCounts::evaluate() const {
  BigInt total = 0;
  BigInt power = base_;
  for (std::int64_t c : counts_) {
    total += power * c;
    power *= base_;
  }
  return total;
}

std::strong_ordering RankCounts::operator<=>(const RankCounts& other) const {
  // Trimmed vectors: a longer vector has a non-zero top coordinate.
  const std::size_t len = std::max(counts_.size(), other.counts_.size());
  for (std::size_t k = len; k-- > 0;) {
    const std::int64_t a = k < counts_.size() ? counts_[k] : 0;
    const std::int64_t b = k < other.counts_.size() ? other.counts_[k] : 0;
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

CostValue CostValue::zero(CostRealization realization, std::uint64_t base) {
  if (realization == CostRealization::kScalar) return CostValue(Rational(0));
  return CostValue(RankCounts(base));
}

bool CostValue::is_zero() const {
  if (is_scalar()) return scalar() == 0;
  return counts().is_zero();
}

CostValue CostValue::zero_like() const {
  return is_scalar() ? zero(CostRealization::kScalar) : zero(CostRealization::kRankCounts, counts().base());
}

Rational CostValue::to_rational() const {
  if (is_scalar()) return scalar();
  return Rational(counts().evaluate());
}

std::string CostValue::to_string() const { return to_decimal_string(to_rational()); }

CostValue& CostValue::operator+=(const CostValue& other) {
  if (realization() == other.realization()) {
    if (is_scalar()) {
      std::get<Rational>(value_) += other.scalar();
    } else {
      std::get<RankCounts>(value_) += other.counts();
    }
  } else if (other.is_zero()) {
    // adding the other realization's zero
  } else if (is_zero()) {
    value_ = other.value_;
  } else {
    throw std::logic_error("cannot add costs of different realizations");
  }
  return *this;
}

CostValue& CostValue::operator-=(const CostValue& other) {
  if (realization() == other.realization()) {
    if (is_scalar()) {
      std::get<Rational>(value_) -= other.scalar();
    } else {
      std::get<RankCounts>(value_) -= other.counts();
    }
  } else if (other.is_zero()) {
    // subtracting the other realization's zero
  } else if (is_zero()) {
    if (other.is_scalar()) {
      value_ = Rational(-other.scalar());
    } else {
      value_ = -other.counts();
    }
  } else {
    throw std::logic_error("cannot subtract costs of different realizations");
  }
  return *this;
}

std::strong_ordering CostValue::operator<=>(const CostValue& other) const {
  if (realization() == other.realization()) {
    if (is_scalar()) {
      const auto& a = scalar();
      const auto& b = other.scalar();
      if (a < b) return std::strong_ordering::less;
      if (b < a) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    return counts() <=> other.counts();
  }
  // Mixed realizations compare only through a zero.
  if (is_zero()) {
    CostValue z = other.zero_like();
    return z <=> other;
  }
  if (other.is_zero()) {
    CostValue z = zero_like();
    return *this <=> z;
  }
  throw std::logic_error("cannot compare costs of different realizations");
}

bool CostValue::operator==(const CostValue& other) const {
  return (*this <=> other) == std::strong_ordering::equal;
}

}  // namespace osm
