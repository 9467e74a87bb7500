#include "osm/testsupport/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace osm::testsupport {

namespace {

template <class Id>
std::vector<std::vector<Id>> group_into_tiers(const std::vector<Id>& order, double ties,
                                              std::mt19937_64& rng) {
  std::bernoulli_distribution merge(ties);
  std::vector<std::vector<Id>> tiers;
  for (const auto& id : order) {
    if (tiers.empty() || !merge(rng)) tiers.emplace_back();
    tiers.back().push_back(id);
  }
  return tiers;
}

}  // namespace

void check_spec(const InstanceSpec& spec) {
  auto bad = [](const std::string& what) { throw ValidationError("invalid instance spec: " + what); };
  if (spec.students < 1) bad("students must be at least 1");
  if (spec.schools < 1) bad("schools must be at least 1");
  if (spec.cap_min < 1) bad("cap-min must be at least 1");
  if (spec.cap_max < spec.cap_min) bad("cap-max must not be below cap-min");
  if (!(spec.ties >= 0.0 && spec.ties <= 1.0)) bad("ties must lie in [0, 1]");
  if (!(spec.incomplete >= 0.0 && spec.incomplete <= 1.0)) bad("incomplete must lie in [0, 1]");
  if (!(spec.skew >= 0.0) || !std::isfinite(spec.skew)) bad("skew must be a finite value >= 0");
}

SchoolChoiceProblem generate_instance(const InstanceSpec& spec) {
  check_spec(spec);
  std::mt19937_64 rng(spec.seed);

  std::vector<SchoolId> school_ids;
  std::vector<StudentId> student_ids;
  for (std::size_t s = 0; s < spec.schools; ++s) school_ids.push_back({"s" + std::to_string(s + 1)});
  for (std::size_t i = 0; i < spec.students; ++i) student_ids.push_back({"i" + std::to_string(i + 1)});

  std::vector<double> weight(spec.schools);
  for (std::size_t s = 0; s < spec.schools; ++s) {
    weight[s] = std::pow(static_cast<double>(s + 1), -spec.skew);
  }

  SchoolChoiceProblem problem;
  std::uniform_int_distribution<int> capacity(spec.cap_min, spec.cap_max);
  for (const auto& id : school_ids) problem.schools.push_back({id, capacity(rng), {}});

  std::bernoulli_distribution truncate(spec.incomplete);
  for (const auto& id : student_ids) {
    // Plackett-Luce: draw schools one at a time in proportion to the weights
    // of those not yet drawn.
    std::vector<double> remaining = weight;
    std::vector<SchoolId> order;
    for (std::size_t k = 0; k < spec.schools; ++k) {
      std::discrete_distribution<std::size_t> pick(remaining.begin(), remaining.end());
      const std::size_t s = pick(rng);
      order.push_back(school_ids[s]);
      remaining[s] = 0.0;
    }
    if (spec.schools > 1 && truncate(rng)) {
      std::uniform_int_distribution<std::size_t> keep(1, spec.schools - 1);
      order.resize(keep(rng));
    }
    problem.students.push_back({id, {group_into_tiers(order, spec.ties, rng)}});
  }

  for (auto& school : problem.schools) {
    std::vector<StudentId> order = student_ids;
    std::shuffle(order.begin(), order.end(), rng);
    school.priorities.tiers = group_into_tiers(order, spec.ties, rng);
  }
  return problem;
}

}  // namespace osm::testsupport
