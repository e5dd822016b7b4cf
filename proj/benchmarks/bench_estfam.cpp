#include <benchmark/benchmark.h>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "estfam/analytics.hpp"
#include "estfam/family.hpp"
#include "estfam/moments.hpp"
#include "estfam/rng.hpp"
#include "estfam/simulator.hpp"

namespace {

estfam::PopulationData synthetic_population(std::size_t count) {
  estfam::PopulationData pop;
  estfam::SplitMix64 rng(99u);
  pop.y.reserve(count);
  pop.x.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double base = 20.0 + static_cast<double>(rng.next() >> 11) * 0x1.0p-53 * 10.0;
    pop.x.push_back(base);
    pop.y.push_back(50.0 - base + static_cast<double>(rng.next() >> 11) * 0x1.0p-53);
  }
  return pop;
}

void BM_ComputeMoments(benchmark::State& state) {
  const auto pop = synthetic_population(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estfam::compute_moments(pop));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ComputeMoments)->Arg(20)->Arg(1000)->Arg(100000);

void BM_EvaluateCatalog(benchmark::State& state) {
  const auto pop = synthetic_population(1000);
  const auto m = estfam::compute_moments(pop);
  const auto entries = estfam::catalog(m);
  double ybar = m.mean_y * 1.01;
  double xbar = m.mean_x * 0.99;
  for (auto _ : state) {
    double total = 0.0;
    for (const auto& named : entries)
      total += estfam::evaluate(named.config, ybar, xbar, m.mean_x);
    benchmark::DoNotOptimize(total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(entries.size()));
}
BENCHMARK(BM_EvaluateCatalog);

void BM_FirstOrderSummary(benchmark::State& state) {
  const auto pop = synthetic_population(1000);
  const auto m = estfam::compute_moments(pop);
  const double f1 = estfam::sampling_fraction_factor(1000, 100);
  const auto entries = estfam::catalog(m);
  for (auto _ : state) {
    double total = 0.0;
    for (const auto& named : entries)
      total += estfam::named_analysis(named, m, f1).mse;
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_FirstOrderSummary);

void BM_DrawSrswor(benchmark::State& state) {
  const auto pop = synthetic_population(1000);
  estfam::SplitMix64 rng(7u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estfam::draw_srswor(pop, 100, rng));
  }
}
BENCHMARK(BM_DrawSrswor);

void BM_MonteCarlo(benchmark::State& state) {
  const auto pop = synthetic_population(200);
  const auto m = estfam::compute_moments(pop);
  estfam::SimulationPlan plan;
  plan.sample_size = 20;
  plan.replications = static_cast<std::uint64_t>(state.range(0));
  plan.seed = 5u;
  for (const auto& named : estfam::catalog(m))
    plan.estimators.push_back(named.config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estfam::run_monte_carlo(pop, plan, 1));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarlo)->Arg(10000);

void BM_EnumerateExact(benchmark::State& state) {
  const auto pop = synthetic_population(12);
  const auto m = estfam::compute_moments(pop);
  std::vector<estfam::EstimatorConfig> configs;
  for (const auto& named : estfam::catalog(m)) configs.push_back(named.config);
  for (auto _ : state) {
    benchmark::DoNotOptimize(estfam::enumerate_exact(pop, 4, configs));
  }
}
BENCHMARK(BM_EnumerateExact);

}  // namespace

BENCHMARK_MAIN();
