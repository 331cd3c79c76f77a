// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <algorithm>
#include <vector>

#include "tll/kernels.hpp"
#include "tll/random.hpp"
#include "tll/spectral.hpp"

namespace {

std::vector<double> random_positions(int count, int n, std::uint64_t seed) {
  tll::Rng rng(seed);
  std::vector<double> x(static_cast<std::size_t>(count));
  for (double& v : x) v = tll::uniform(rng, 0.0, n);
  std::sort(x.begin(), x.end());
  return x;
}

void BM_PairSumNaive(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  const int n = count / 4;
  const auto x = random_positions(count, n, 7);
  const auto spec = tll::PotentialSpec::power_law(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(tll::kernels::pair_sum_naive(x, spec, 0));
}

void BM_PairSumCells(benchmark::State& state) {
  const int count = static_cast<int>(state.range(0));
  const int n = count / 4;
  const auto x = random_positions(count, n, 7);
  const auto spec = tll::PotentialSpec::power_law(2.0);
  for (auto _ : state) benchmark::DoNotOptimize(tll::kernels::pair_sum_cells(x, spec, n + 1, 0));
}

void BM_FourierTableSerial(benchmark::State& state) {
  const auto spec = tll::PotentialSpec::overlap();
  for (auto _ : state) benchmark::DoNotOptimize(tll::fourier_table_serial(spec, 4, static_cast<int>(state.range(0))));
}

void BM_FourierTableParallel(benchmark::State& state) {
  const auto spec = tll::PotentialSpec::overlap();
  for (auto _ : state) benchmark::DoNotOptimize(tll::fourier_table(spec, 4, static_cast<int>(state.range(0))));
}

void BM_MinimalityScan(benchmark::State& state) {
  const auto spec = tll::PotentialSpec::step();
  for (auto _ : state) benchmark::DoNotOptimize(tll::minimality_scan(spec, 3, static_cast<int>(state.range(0)), 1));
}

}  // namespace

BENCHMARK(BM_PairSumNaive)->Arg(200)->Arg(2000)->Arg(8000);
BENCHMARK(BM_PairSumCells)->Arg(200)->Arg(2000)->Arg(8000);
BENCHMARK(BM_FourierTableSerial)->Arg(100)->Arg(1000);
BENCHMARK(BM_FourierTableParallel)->Arg(100)->Arg(1000);
BENCHMARK(BM_MinimalityScan)->Arg(10000);

BENCHMARK_MAIN();
