#include "osm/analysis.hpp"

#include <algorithm>

namespace osm {

namespace {

void guard(const Instance& instance, const char* what) {
  if (instance.num_students() > kCertificationStudentLimit) {
    throw GuardExceeded(std::string(what) + " is limited to " +
                        std::to_string(kCertificationStudentLimit) + " students (instance has " +
                        std::to_string(instance.num_students()) + ")");
  }
}

int rank_of_assignment(const Instance& instance, std::span<const SchoolIndex> a) {
  int top = 0;
  for (StudentIndex i = 0; i < a.size(); ++i) top = std::max(top, instance.rank_of(i, a[i]));
  return top;
}

}  // namespace

std::uint64_t preference_index(const Instance& instance, const Matching& matching) {
  matching.check_fits(instance);
  std::uint64_t total = 0;
  for (StudentIndex i = 0; i < matching.size(); ++i) {
    total += static_cast<std::uint64_t>(instance.rank_of(i, matching[i]) - 1);
  }
  return total;
}

int matching_rank(const Instance& instance, const Matching& matching) {
  matching.check_fits(instance);
  return rank_of_assignment(instance, matching.assignment());
}

int minimum_rank(const Instance& instance) {
  guard(instance, "minimum-rank search");
  int best = std::numeric_limits<int>::max();
  for_each_feasible_matching(instance, [&](std::span<const SchoolIndex> a) {
    best = std::min(best, rank_of_assignment(instance, a));
  });
  return best;
}

bool is_rank_minimal(const Instance& instance, const Matching& matching) {
  return matching_rank(instance, matching) <= minimum_rank(instance);
}

std::vector<std::size_t> rank_signature(const Instance& instance, const Matching& matching) {
  matching.check_fits(instance);
  std::vector<std::size_t> counts(static_cast<std::size_t>(instance.max_rank()), 0);
  for (StudentIndex i = 0; i < matching.size(); ++i) {
    if (matching[i] == kUnassigned) continue;
    ++counts[static_cast<std::size_t>(instance.rank(i, matching[i]) - 1)];
  }
  return counts;
}

std::vector<Matching> rank_maximal_matchings(const Instance& instance) {
  guard(instance, "rank-maximal search");
  std::vector<std::size_t> best;
  std::vector<Matching> winners;
  std::vector<std::size_t> sig(static_cast<std::size_t>(instance.max_rank()));
  for_each_feasible_matching(instance, [&](std::span<const SchoolIndex> a) {
    std::fill(sig.begin(), sig.end(), 0);
    for (StudentIndex i = 0; i < a.size(); ++i) {
      if (a[i] != kUnassigned) ++sig[static_cast<std::size_t>(instance.rank(i, a[i]) - 1)];
    }
    // More students at rank 1 first, then rank 2, and so on.
    if (winners.empty() || sig > best) {
      best = sig;
      winners.clear();
    } else if (sig != best) {
      return;
    }
    winners.push_back(Matching::create(instance, {a.begin(), a.end()}));
  });
  return winners;
}

bool pareto_dominates(const Instance& instance, const Matching& candidate, const Matching& base) {
  bool strict = false;
  for (StudentIndex i = 0; i < base.size(); ++i) {
    const int now = instance.rank_of(i, base[i]);
    const int then = instance.rank_of(i, candidate[i]);
    if (then > now) return false;
    if (then < now) strict = true;
  }
  return strict;
}

ParetoCertificate is_pareto_efficient(const Instance& instance, const Matching& matching) {
  guard(instance, "Pareto certification");
  matching.check_fits(instance);
  ParetoCertificate cert;
  for_each_feasible_matching(instance, [&](std::span<const SchoolIndex> a) {
    bool strict = false;
    for (StudentIndex i = 0; i < a.size(); ++i) {
      const int now = instance.rank_of(i, matching[i]);
      const int then = instance.rank_of(i, a[i]);
      if (then > now) return true;
      if (then < now) strict = true;
    }
    if (!strict) return true;
    cert.dominated_by = Matching::create(instance, {a.begin(), a.end()});
    return false;
  });
  return cert;
}

PriorityViolations priority_violations(const Instance& instance, const Matching& matching) {
  matching.check_fits(instance);
  PriorityViolations out;
  const std::size_t n = instance.num_students();
  for (StudentIndex holder = 0; holder < n; ++holder) {
    const SchoolIndex s = matching[holder];
    if (s == kUnassigned) continue;
    for (StudentIndex other = 0; other < n; ++other) {
      if (other == holder) continue;
      if (instance.rank(other, s) >= instance.rank_of(other, matching[other])) continue;
      if (instance.priority_tier(s, other) >= instance.priority_tier(s, holder)) continue;
      out.pairs.push_back({holder, other, s});
      out.violated_students.insert(other);
    }
  }
  std::sort(out.pairs.begin(), out.pairs.end());
  return out;
}

MatchingReport analyze_matching(const Instance& instance, const Matching& matching,
                                const UtilityTransform& transform) {
  MatchingReport report;
  report.preference_index = preference_index(instance, matching);
  report.rank = matching_rank(instance, matching);
  report.rank_signature = rank_signature(instance, matching);
  report.cost = cost_of_matching(transform.resolved(instance), instance, matching);
  report.violations = priority_violations(instance, matching);
  if (instance.num_students() <= kCertificationStudentLimit) {
    report.pareto = is_pareto_efficient(instance, matching);
    report.rank_minimal = is_rank_minimal(instance, matching);
  }
  return report;
}

}  // namespace osm
