#include <benchmark/benchmark.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "hgs/local_search.hpp"
#include "hgs/split.hpp"

namespace {

hgs::Instance clustered_instance(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coord(0, 1000);
  std::normal_distribution<double> spread(0.0, 50.0);
  std::vector<hgs::Point> centers;
  for (int c = 0; c < 6; ++c) centers.push_back({static_cast<double>(coord(rng)), static_cast<double>(coord(rng))});
  std::vector<hgs::Point> coords{{500, 500}};
  std::vector<int> demands{0};
  for (int i = 1; i <= n; ++i) {
    const auto& c = centers[rng() % centers.size()];
    coords.push_back({std::round(c.x + spread(rng)), std::round(c.y + spread(rng))});
    demands.push_back(1 + static_cast<int>(rng() % 10));
  }
  return hgs::Instance("bench", coords, demands, 60);
}

hgs::Individual random_start(const hgs::Instance& inst, std::mt19937& rng) {
  std::vector<int> tour(inst.num_customers());
  std::iota(tour.begin(), tour.end(), 1);
  std::shuffle(tour.begin(), tour.end(), rng);
  return hgs::Individual(inst, hgs::split_linear(inst, tour, 10.0).routes);
}

void run_descent(benchmark::State& state, bool swap_star) {
  std::mt19937 rng(3);
  const auto inst = clustered_instance(static_cast<int>(state.range(0)), rng);
  hgs::LocalSearchOptions options;
  options.swap_star = swap_star;
  hgs::LocalSearch ls(inst, rng, options);
  for (auto _ : state) {
    state.PauseTiming();
    const auto start = random_start(inst, rng);
    state.ResumeTiming();
    benchmark::DoNotOptimize(ls.run(start, 10.0).total_distance());
  }
  state.counters["moves/descent"] =
      benchmark::Counter(static_cast<double>(ls.stats().moves), benchmark::Counter::kAvgIterations);
}

void BM_Descent(benchmark::State& state) { run_descent(state, true); }
void BM_DescentNoSwapStar(benchmark::State& state) { run_descent(state, false); }
BENCHMARK(BM_Descent)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DescentNoSwapStar)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_SwapStarSweep(benchmark::State& state) {
  std::mt19937 rng(5);
  const auto inst = clustered_instance(static_cast<int>(state.range(0)), rng);
  hgs::LocalSearch ls(inst, rng);
  const auto local = ls.run(random_start(inst, rng), 10.0);
  for (auto _ : state) {
    ls.load(local, 10.0);
    benchmark::DoNotOptimize(ls.swap_star_sweep());
  }
}
BENCHMARK(BM_SwapStarSweep)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMicrosecond);

}  // namespace
