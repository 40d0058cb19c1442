#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "hgs/split.hpp"

namespace {

hgs::Instance uniform_instance(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coord(0, 1000);
  std::uniform_int_distribution<int> demand(1, 100);
  std::vector<hgs::Point> coords(n + 1);
  std::vector<int> demands(n + 1, 0);
  for (int i = 0; i <= n; ++i) {
    coords[i] = {static_cast<double>(coord(rng)), static_cast<double>(coord(rng))};
    if (i > 0) demands[i] = demand(rng);
  }
  return hgs::Instance("bench", coords, demands, 500);
}

std::vector<int> shuffled_tour(int n, std::mt19937& rng) {
  std::vector<int> tour(n);
  std::iota(tour.begin(), tour.end(), 1);
  std::shuffle(tour.begin(), tour.end(), rng);
  return tour;
}

void BM_SplitLinear(benchmark::State& state) {
  std::mt19937 rng(1);
  const int n = static_cast<int>(state.range(0));
  const auto inst = uniform_instance(n, rng);
  const auto tour = shuffled_tour(n, rng);
  hgs::Split split(inst);
  for (auto _ : state) benchmark::DoNotOptimize(split.run_unlimited(tour, 10.0).cost);
  state.SetComplexityN(n);
}
BENCHMARK(BM_SplitLinear)->RangeMultiplier(2)->Range(64, 2048)->Complexity();

void BM_SplitBellman(benchmark::State& state) {
  std::mt19937 rng(1);
  const int n = static_cast<int>(state.range(0));
  const auto inst = uniform_instance(n, rng);
  const auto tour = shuffled_tour(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hgs::split_bellman(inst, tour, 10.0).cost);
  state.SetComplexityN(n);
}
BENCHMARK(BM_SplitBellman)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

}  // namespace
