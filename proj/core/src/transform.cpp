#include "osm/transform.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace osm {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

Rational parse_rational_or_throw(const std::string& text, std::string_view what) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw TransformError(std::string(what) + ": " + e.what());
  }
}

std::string table_problem(const std::map<int, Rational>& values) {
  if (values.empty()) return "table is empty";
  int expected = 1;
  for (const auto& [rank, value] : values) {
    if (rank != expected) {
      return "table ranks must be 1.." + std::to_string(values.size()) + " without gaps (missing " +
             std::to_string(expected) + ")";
    }
    ++expected;
  }
  if (values.begin()->second < 0) return "table value for rank 1 is negative";
  for (auto it = values.begin(); std::next(it) != values.end(); ++it) {
    if (!(it->second < std::next(it)->second)) {
      return "table is not strictly increasing at rank " + std::to_string(it->first);
    }
  }
  return {};
}

}  // namespace

UtilityTransform UtilityTransform::linear(Rational slope, Rational intercept) {
  if (slope <= 0) throw TransformError("linear transform needs a positive slope");
  if (slope + intercept < 0) throw TransformError("linear transform is negative at rank 1");
  return UtilityTransform(LinearTransform{std::move(slope), std::move(intercept)});
}

UtilityTransform UtilityTransform::exponential(std::optional<std::uint64_t> base) {
  if (base && *base < 2) throw TransformError("exponential base must be at least 2");
  return UtilityTransform(ExponentialTransform{base});
}

UtilityTransform UtilityTransform::table(std::map<int, Rational> values) {
  if (auto problem = table_problem(values); !problem.empty()) throw TransformError(problem);
  return UtilityTransform(TableTransform{std::move(values)});
}

UtilityTransform UtilityTransform::unchecked_table(std::map<int, Rational> values) {
  const bool ok = table_problem(values).empty();
  return UtilityTransform(TableTransform{std::move(values)}, ok);
}

UtilityTransform UtilityTransform::table_from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TransformError("cannot open table file '" + path.string() + "'");
  std::map<int, Rational> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
      throw TransformError(path.string() + ":" + std::to_string(line_no) +
                           ": expected 'rank,value'");
    }
    const std::string rank_text = trim(std::string_view(text).substr(0, comma));
    const std::string value_text = trim(std::string_view(text).substr(comma + 1));
    int rank = 0;
    auto [ptr, ec] = std::from_chars(rank_text.data(), rank_text.data() + rank_text.size(), rank);
    if (ec != std::errc() || ptr != rank_text.data() + rank_text.size()) {
      if (values.empty() && line_no == 1) continue;  // header row
      throw TransformError(path.string() + ":" + std::to_string(line_no) + ": bad rank '" +
                           rank_text + "'");
    }
    if (!values.emplace(rank, parse_rational_or_throw(value_text, path.string() + ":" +
                                                                      std::to_string(line_no)))
             .second) {
      throw TransformError(path.string() + ":" + std::to_string(line_no) + ": rank " +
                           std::to_string(rank) + " listed twice");
    }
  }
  return table(std::move(values));
}

UtilityTransform UtilityTransform::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string head = trim(spec.substr(0, colon));
  const std::string rest = colon == std::string_view::npos ? "" : trim(spec.substr(colon + 1));

  auto parse_params = [&](std::string_view body) {
    std::map<std::string, std::string> params;
    std::stringstream ss{std::string(body)};
    std::string item;
    while (std::getline(ss, item, ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw TransformError("malformed parameter '" + item + "'");
      params[trim(std::string_view(item).substr(0, eq))] = trim(std::string_view(item).substr(eq + 1));
    }
    return params;
  };

  if (head == "linear") {
    auto params = parse_params(rest);
    if (!params.contains("a") || !params.contains("b") || params.size() != 2) {
      throw TransformError("linear transform needs exactly a=<rat>,b=<rat>");
    }
    return linear(parse_rational_or_throw(params["a"], "linear a"),
                  parse_rational_or_throw(params["b"], "linear b"));
  }
  if (head == "exp") {
    if (rest.empty()) return exponential();
    auto params = parse_params(rest);
    if (!params.contains("base") || params.size() != 1) {
      throw TransformError("exponential transform takes only base=<int>");
    }
    const auto& text = params["base"];
    std::uint64_t base = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), base);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw TransformError("bad exponential base '" + text + "'");
    }
    return exponential(base);
  }
  if (head == "table") {
    if (rest.empty()) throw TransformError("table transform needs a file path");
    return table_from_csv(rest);
  }
  throw TransformError("unknown transform '" + std::string(spec) + "'");
}

bool UtilityTransform::needs_resolution() const {
  const auto* e = std::get_if<ExponentialTransform>(&kind_);
  return e != nullptr && !e->base;
}

std::optional<std::uint64_t> UtilityTransform::base() const {
  if (const auto* e = std::get_if<ExponentialTransform>(&kind_)) return e->base;
  return std::nullopt;
}

std::optional<int> UtilityTransform::max_rank() const {
  if (const auto* t = std::get_if<TableTransform>(&kind_)) {
    if (t->values.empty()) return 0;
    return t->values.rbegin()->first;
  }
  return std::nullopt;
}

UtilityTransform UtilityTransform::resolved(std::size_t seats, std::size_t students) const {
  if (!needs_resolution()) return *this;
  return exponential(static_cast<std::uint64_t>(std::max(seats, students)) + 1);
}

CostRealization UtilityTransform::preferred_realization(std::size_t students) const {
  const auto b = base();
  if (b && *b > students) return CostRealization::kRankCounts;
  return CostRealization::kScalar;
}

std::string UtilityTransform::describe() const {
  return std::visit(
      overloaded{
          [](const LinearTransform& l) {
            return "linear:a=" + to_decimal_string(l.slope) + ",b=" + to_decimal_string(l.intercept);
          },
          [](const ExponentialTransform& e) {
            return e.base ? "exp:base=" + std::to_string(*e.base) : std::string("exp");
          },
          [](const TableTransform& t) {
            std::string out = "table:{";
            bool first = true;
            for (const auto& [rank, value] : t.values) {
              if (!first) out += ",";
              first = false;
              out += std::to_string(rank) + ":" + to_decimal_string(value);
            }
            return out + "}";
          },
      },
      kind_);
}

Rational apply_scalar(const UtilityTransform& transform, int rank) {
  if (rank < 1) throw TransformError("rank " + std::to_string(rank) + " is not positive");
  if (!transform.valid()) throw TransformError("transform is not strictly increasing");
  return std::visit(
      overloaded{
          [&](const LinearTransform& l) -> Rational { return l.slope * rank + l.intercept; },
          [&](const ExponentialTransform& e) -> Rational {
            if (!e.base) throw TransformError("exponential base has not been resolved");
            BigInt value = 1;
            for (int k = 0; k < rank; ++k) value *= *e.base;
            return Rational(value);
          },
          [&](const TableTransform& t) -> Rational {
            auto it = t.values.find(rank);
            if (it == t.values.end()) {
              throw TransformError("rank " + std::to_string(rank) + " is outside the table domain 1.." +
                                   std::to_string(t.values.size()));
            }
            return it->second;
          },
      },
      transform.kind());
}

CostValue apply(const UtilityTransform& transform, int rank, CostRealization realization) {
  if (realization == CostRealization::kScalar) return CostValue(apply_scalar(transform, rank));
  if (rank < 1) throw TransformError("rank " + std::to_string(rank) + " is not positive");
  const auto base = transform.base();
  if (!transform.is_exponential()) {
    throw TransformError("rank-count costs exist only for exponential transforms");
  }
  if (!base) throw TransformError("exponential base has not been resolved");
  return CostValue(RankCounts::unit(*base, rank));
}

CostValue cost_of_matching(const UtilityTransform& transform, const Instance& instance,
                           const Matching& matching, CostRealization realization) {
  matching.check_fits(instance);
  CostValue total = CostValue::zero(realization, transform.base().value_or(0));
  for (StudentIndex i = 0; i < instance.num_students(); ++i) {
    total += apply(transform, instance.rank_of(i, matching[i]), realization);
  }
  return total;
}

bool check_strictly_increasing(const UtilityTransform& transform, int max_rank) {
  if (transform.needs_resolution()) {
    return check_strictly_increasing(UtilityTransform::exponential(2), max_rank);
  }
  if (const auto* t = std::get_if<TableTransform>(&transform.kind())) {
    for (int r = 1; r <= max_rank; ++r) {
      if (!t->values.contains(r)) return false;
    }
    if (t->values.at(1) < 0) return false;
    for (int r = 1; r < max_rank; ++r) {
      if (!(t->values.at(r) < t->values.at(r + 1))) return false;
    }
    return true;
  }
  if (apply_scalar(transform, 1) < 0) return false;
  for (int r = 1; r < max_rank; ++r) {
    if (!(apply_scalar(transform, r) < apply_scalar(transform, r + 1))) return false;
  }
  return true;
}

int required_rank(const Instance& instance) {
  int top = instance.max_rank();
  if (instance.forced_unassigned() > 0) {
    for (StudentIndex i = 0; i < instance.num_students(); ++i) {
      top = std::max(top, instance.unassigned_rank(i));
    }
  }
  return top;
}

}  // namespace osm
