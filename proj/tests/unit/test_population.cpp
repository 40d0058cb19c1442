#include <gtest/gtest.h>

#include <algorithm>
#include <limits>
#include <random>
#include <set>

#include "generators.hpp"
#include "hgs/population.hpp"
#include "hgs/split.hpp"

namespace {

using hgs::Individual;
using hgs::Instance;
using hgs::Params;
using hgs::Population;
using hgs::Subpopulation;

/// `count` individuals with pairwise distinct giant tours.
std::vector<Individual> distinct_individuals(const Instance& inst, std::mt19937& rng, int count, double penalty) {
  std::vector<Individual> out;
  std::set<std::vector<int>> seen;
  while (static_cast<int>(out.size()) < count) {
    const auto tour = hgs::testing::random_tour(rng, inst.num_customers());
    if (!seen.insert(tour).second) continue;
    out.emplace_back(inst, hgs::split_linear(inst, tour, penalty).routes);
  }
  return out;
}

Instance roomy_instance(std::mt19937& rng, int n) {
  // capacity covers everything, so every split is feasible
  return hgs::testing::random_instance(rng, {.customers = n, .capacity_factor = 1000.0});
}

TEST(Subpopulation, SingletonDiversityIsOne) {
  std::mt19937 rng(1);
  const Instance inst = roomy_instance(rng, 8);
  Subpopulation sub;
  sub.add(distinct_individuals(inst, rng, 1, 1.0).front());
  EXPECT_EQ(sub.diversity_contribution(0, 5), 1.0);
  EXPECT_FALSE(sub.has_clone(0));
}

TEST(Subpopulation, DiversityAveragesClosestDistances) {
  std::mt19937 rng(2);
  const Instance inst = roomy_instance(rng, 12);
  Subpopulation sub;
  for (auto& ind : distinct_individuals(inst, rng, 7, 1.0)) sub.add(std::move(ind));
  for (int i = 0; i < sub.size(); ++i) {
    std::vector<double> d;
    for (int j = 0; j < sub.size(); ++j) {
      if (j == i) continue;
      d.push_back(hgs::broken_pairs_distance(sub[i], sub[j]));
      ASSERT_DOUBLE_EQ(sub.distance(i, j), d.back());
    }
    std::sort(d.begin(), d.end());
    const double expected = (d[0] + d[1] + d[2]) / 3.0;
    ASSERT_DOUBLE_EQ(sub.diversity_contribution(i, 3), expected);
  }
}

TEST(Subpopulation, RemoveKeepsDistancesAligned) {
  std::mt19937 rng(3);
  const Instance inst = roomy_instance(rng, 10);
  Subpopulation sub;
  for (auto& ind : distinct_individuals(inst, rng, 6, 1.0)) sub.add(std::move(ind));
  sub.remove(2);
  sub.remove(0);
  ASSERT_EQ(sub.size(), 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) ASSERT_DOUBLE_EQ(sub.distance(i, j), hgs::broken_pairs_distance(sub[i], sub[j]));
  }
}

TEST(Subpopulation, ClonePreferredForRemoval) {
  std::mt19937 rng(4);
  const Instance inst = roomy_instance(rng, 10);
  auto pool = distinct_individuals(inst, rng, 6, 1.0);
  std::sort(pool.begin(), pool.end(),
            [](const Individual& a, const Individual& b) { return a.total_distance() < b.total_distance(); });
  Subpopulation sub;
  // the two clones are the second cheapest solution; worse ones exist
  sub.add(pool[0]);
  sub.add(pool[1]);
  sub.add(pool[1]);
  for (int i = 2; i < 6; ++i) sub.add(pool[i]);
  ASSERT_TRUE(sub.has_clone(1));
  ASSERT_TRUE(sub.has_clone(2));
  const int victim = sub.worst(1.0, 4, 5);
  EXPECT_TRUE(victim == 1 || victim == 2);
}

TEST(Subpopulation, WorstIsHighestFitnessNeverCheapest) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Instance inst = roomy_instance(rng, 10);
    Subpopulation sub;
    for (auto& ind : distinct_individuals(inst, rng, 2 + static_cast<int>(rng() % 10), 1.0)) sub.add(std::move(ind));
    bool clones = false;
    for (int i = 0; i < sub.size(); ++i) clones = clones || sub.has_clone(i);
    if (clones) continue;
    const auto fit = sub.fitness(1.0, 4, 5);
    const auto costs = sub.penalized_costs(1.0);
    const int cheapest = static_cast<int>(std::min_element(costs.begin(), costs.end()) - costs.begin());
    const int victim = sub.worst(1.0, 4, 5);
    ASSERT_NE(victim, cheapest);
    for (int i = 0; i < sub.size(); ++i) {
      if (i != cheapest) ASSERT_LE(fit[i], fit[victim]);
    }
  }
}

TEST(Population, SurvivorSelectionShrinksToMu) {
  std::mt19937 rng(6);
  const Instance inst = roomy_instance(rng, 12);
  Params params;
  params.mu = 4;
  params.lambda = 3;
  Population pop(params);
  auto pool = distinct_individuals(inst, rng, 7, 1.0);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 6; ++i) {
    best = std::min(best, pool[i].total_distance());
    pop.add(pool[i], 1.0);
  }
  EXPECT_EQ(pop.feasible().size(), 6);
  best = std::min(best, pool[6].total_distance());
  pop.add(pool[6], 1.0);
  EXPECT_EQ(pop.feasible().size(), params.mu);
  ASSERT_TRUE(pop.best().has_value());
  EXPECT_EQ(pop.best()->total_distance(), best);
  const auto& members = pop.feasible().members();
  EXPECT_TRUE(std::any_of(members.begin(), members.end(),
                          [&](const Individual& m) { return m.total_distance() == best; }));
}

TEST(Population, RoutesByFeasibilityAndTracksBest) {
  std::mt19937 rng(7);
  const Instance inst = hgs::testing::random_instance(rng, {.customers = 10, .capacity_factor = 3.0});
  Params params;
  Population pop(params);
  const Individual infeasible(inst, {hgs::testing::random_tour(rng, 10)});
  ASSERT_FALSE(infeasible.is_feasible());
  auto outcome = pop.add(infeasible, 1.0);
  EXPECT_FALSE(outcome.improved_best);
  EXPECT_EQ(pop.infeasible().size(), 1);
  EXPECT_FALSE(pop.best().has_value());
  EXPECT_EQ(pop.best_infeasible(1.0)->total_distance(), infeasible.total_distance());

  std::vector<std::vector<int>> singletons;
  for (int v = 1; v <= 10; ++v) singletons.push_back({v});
  const Individual feasible(inst, singletons);
  outcome = pop.add(feasible, 1.0);
  EXPECT_TRUE(outcome.improved_best);
  EXPECT_TRUE(outcome.improved_restart_best);
  EXPECT_EQ(pop.feasible().size(), 1);

  pop.restart();
  EXPECT_EQ(pop.size(), 0);
  EXPECT_TRUE(pop.best().has_value());
  EXPECT_FALSE(pop.restart_best().has_value());
}

TEST(Population, SingleMemberIsBothParents) {
  std::mt19937 rng(8);
  const Instance inst = roomy_instance(rng, 6);
  Population pop(Params{});
  pop.add(distinct_individuals(inst, rng, 1, 1.0).front(), 1.0);
  const auto [p1, p2] = pop.select_parents(rng, 1.0);
  EXPECT_EQ(p1, p2);
  EXPECT_EQ(p1, &pop.feasible()[0]);
}

TEST(Population, TournamentPicksBestWithClosedFormProbability) {
  std::mt19937 rng(9);
  const Instance inst = roomy_instance(rng, 12);
  Params params;
  params.mu = 25;
  Population pop(params);
  for (auto& ind : distinct_individuals(inst, rng, 6, 1.0)) pop.add(std::move(ind), 1.0);
  const auto fit = pop.feasible().fitness(1.0, params.n_elite, params.n_closest);
  const int best = static_cast<int>(std::min_element(fit.begin(), fit.end()) - fit.begin());
  ASSERT_EQ(std::count(fit.begin(), fit.end(), fit[best]), 1);
  const Individual* best_ptr = &pop.feasible()[best];

  const int trials = 100000;
  int wins = 0;
  for (int t = 0; t < trials; ++t) {
    if (pop.select_parents(rng, 1.0).first == best_ptr) ++wins;
  }
  const double size = pop.size();
  const double expected = (2.0 * size - 1.0) / (size * size);
  EXPECT_NEAR(static_cast<double>(wins) / trials, expected, 0.01);
}

}  // namespace
