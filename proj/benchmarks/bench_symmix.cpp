#include "symmix/contrast.hpp"
#include "symmix/density.hpp"
#include "symmix/estimator.hpp"
#include "symmix/simulate.hpp"

#include <benchmark/benchmark.h>

using namespace symmix;

namespace {

Sample gaussian_sample(std::size_t n)
{
  ScenarioSpec spec;
  spec.n = n;
  spec.seed = 7;
  return sample_mixture(spec, 0);
}

void BM_ContrastPrecompute(benchmark::State& state)
{
  const Sample s = gaussian_sample(static_cast<std::size_t>(state.range(0)));
  const ContrastConfig cfg = default_contrast_config(s.size());
  for (auto _ : state)
    benchmark::DoNotOptimize(EmpiricalContrast(s, cfg));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ContrastPrecompute)->RangeMultiplier(4)->Range(100, 6400)->Complexity(benchmark::oN);

void BM_ContrastValue(benchmark::State& state)
{
  const Sample s = gaussian_sample(1000);
  const EmpiricalContrast sn(s, default_contrast_config(s.size()));
  const EuclideanParam theta{ 0.3, -0.8, 2.1 };
  for (auto _ : state)
    benchmark::DoNotOptimize(sn.value(theta));
}
BENCHMARK(BM_ContrastValue);

void BM_ContrastGradient(benchmark::State& state)
{
  const Sample s = gaussian_sample(1000);
  const EmpiricalContrast sn(s, default_contrast_config(s.size()));
  const EuclideanParam theta{ 0.3, -0.8, 2.1 };
  for (auto _ : state)
    benchmark::DoNotOptimize(sn.gradient(theta));
}
BENCHMARK(BM_ContrastGradient);

void BM_Fit(benchmark::State& state)
{
  const Sample s = gaussian_sample(static_cast<std::size_t>(state.range(0)));
  const ContrastConfig cfg = default_contrast_config(s.size());
  for (auto _ : state)
    benchmark::DoNotOptimize(fit(s, FitConfig{}, cfg));
}
BENCHMARK(BM_Fit)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Density(benchmark::State& state)
{
  const Sample s = gaussian_sample(static_cast<std::size_t>(state.range(0)));
  const EuclideanParam theta{ 0.25, -1.0, 2.0 };
  DensityConfig cfg;
  cfg.bandwidth = default_bandwidth(s.size());
  cfg.grid = default_grid(s, theta, cfg.bandwidth);
  for (auto _ : state)
    benchmark::DoNotOptimize(estimate_density(s, theta, cfg));
}
BENCHMARK(BM_Density)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();
