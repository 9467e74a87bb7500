#pragma once

#include <cstdint>

#include "osm/model.hpp"

namespace osm::testsupport {

struct InstanceSpec {
  std::size_t students = 3;
  std::size_t schools = 3;
  int cap_min = 1;
  int cap_max = 1;
  /// Chance that two neighbouring entries of a list share a tier.
  double ties = 0.0;
  /// Chance that a student's list is cut short.
  double incomplete = 0.0;
  /// School s (0-based) has popularity weight (s + 1)^-skew.
  double skew = 0.0;
  std::uint64_t seed = 0;
};

/// Throws ValidationError for zero counts, an empty or non-positive capacity
/// range, or probabilities outside [0, 1].
void check_spec(const InstanceSpec& spec);

/// Students "i1".., schools "s1"... Preferences follow a Plackett-Luce draw
/// over the popularity weights; priorities are uniform random orders.
SchoolChoiceProblem generate_instance(const InstanceSpec& spec);

}  // namespace osm::testsupport
