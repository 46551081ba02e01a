#include <benchmark/benchmark.h>

#include "household/model.hpp"
#include "household/oracle.hpp"
#include "household/sampling.hpp"
#include "household/scenario.hpp"
#include "household/statics.hpp"

namespace {

using namespace household;

const Instance &instance() {
  static const Instance inst = InstanceSampler(7).next();
  return inst;
}

void BM_SolveClosedForm(benchmark::State &state) {
  const auto &[prefs, econ] = instance();
  for (auto _ : state) benchmark::DoNotOptimize(solve_closed_form(prefs, econ));
}
BENCHMARK(BM_SolveClosedForm);

void BM_AnalyticJacobian(benchmark::State &state) {
  const auto &[prefs, econ] = instance();
  for (auto _ : state) benchmark::DoNotOptimize(analytic_jacobian(prefs, econ));
}
BENCHMARK(BM_AnalyticJacobian);

void BM_FiniteDifferenceJacobian(benchmark::State &state) {
  const auto &[prefs, econ] = instance();
  for (auto _ : state) benchmark::DoNotOptimize(finite_difference_jacobian(prefs, econ));
}
BENCHMARK(BM_FiniteDifferenceJacobian);

void BM_MaximizeNumerically(benchmark::State &state) {
  const auto &[prefs, econ] = instance();
  for (auto _ : state) benchmark::DoNotOptimize(maximize_numerically(prefs, econ));
}
BENCHMARK(BM_MaximizeNumerically)->Unit(benchmark::kMicrosecond);

void BM_CrowdOutSweep(benchmark::State &state) {
  const auto prefs = PreferenceWeights::uniform(1.0);
  const auto grid = linear_grid(0.1, 1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(crowd_out_analysis(prefs, EconomyParams{}, grid));
}
BENCHMARK(BM_CrowdOutSweep)->Arg(10)->Arg(1000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
