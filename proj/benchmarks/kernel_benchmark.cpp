#include <benchmark/benchmark.h>

#include "osm/enumeration.hpp"
#include "osm/hungarian.hpp"
#include "osm/mechanism.hpp"
#include "osm/seat_grid.hpp"
#include "osm/testsupport/generator.hpp"

namespace {

osm::Instance square_instance(std::size_t n, double skew, std::uint64_t seed) {
  osm::testsupport::InstanceSpec spec;
  spec.students = n;
  spec.schools = n;
  spec.skew = skew;
  spec.seed = seed;
  return osm::Instance::from_problem(osm::testsupport::generate_instance(spec));
}

void BM_KernelPreferenceIndex(benchmark::State& state) {
  const auto inst = square_instance(static_cast<std::size_t>(state.range(0)), 1.0, 1);
  const auto grid = osm::build_seat_grid(inst, osm::UtilityTransform::preference_index());
  for (auto _ : state) benchmark::DoNotOptimize(osm::hungarian_solve(grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KernelPreferenceIndex)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_KernelExponentialRankCounts(benchmark::State& state) {
  const auto inst = square_instance(static_cast<std::size_t>(state.range(0)), 1.0, 2);
  osm::GridOptions options;
  options.realization = osm::CostRealization::kRankCounts;
  const auto grid = osm::build_seat_grid(inst, osm::UtilityTransform::exponential(), options);
  for (auto _ : state) benchmark::DoNotOptimize(osm::hungarian_solve(grid));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KernelExponentialRankCounts)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_KernelExponentialScalar(benchmark::State& state) {
  const auto inst = square_instance(static_cast<std::size_t>(state.range(0)), 1.0, 3);
  osm::GridOptions options;
  options.realization = osm::CostRealization::kScalar;
  const auto grid = osm::build_seat_grid(inst, osm::UtilityTransform::exponential(), options);
  for (auto _ : state) benchmark::DoNotOptimize(osm::hungarian_solve(grid));
}
BENCHMARK(BM_KernelExponentialScalar)->RangeMultiplier(2)->Range(8, 64);

void BM_Mechanism(benchmark::State& state) {
  const auto inst = square_instance(static_cast<std::size_t>(state.range(0)), 0.5, 4);
  const auto f = osm::UtilityTransform::preference_index();
  for (auto _ : state) benchmark::DoNotOptimize(osm::run_mechanism(inst, f));
}
BENCHMARK(BM_Mechanism)->Arg(16)->Arg(64)->Arg(200);

void BM_EnumerateIdenticalProfiles(benchmark::State& state) {
  // n students who all agree have n! optima.
  const auto n = static_cast<std::size_t>(state.range(0));
  osm::SchoolChoiceProblem problem;
  for (std::size_t k = 1; k <= n; ++k) {
    problem.schools.push_back({osm::SchoolId{"s" + std::to_string(k)}, 1, {}});
  }
  for (std::size_t i = 1; i <= n; ++i) {
    osm::Student student{osm::StudentId{"i" + std::to_string(i)}, {}};
    for (const auto& school : problem.schools) student.preferences.tiers.push_back({school.id});
    problem.students.push_back(std::move(student));
  }
  const auto inst = osm::Instance::from_problem(problem);
  for (auto _ : state) {
    benchmark::DoNotOptimize(osm::enumerate_min_cost(inst, osm::UtilityTransform::preference_index()));
  }
}
BENCHMARK(BM_EnumerateIdenticalProfiles)->DenseRange(3, 7);

}  // namespace

BENCHMARK_MAIN();
