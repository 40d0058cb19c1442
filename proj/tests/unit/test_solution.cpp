#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "generators.hpp"
#include "hgs/individual.hpp"

namespace {

using hgs::Individual;
using hgs::Instance;

Instance square_instance(int capacity = 10) {
  return Instance("square", {{0, 0}, {0, 10}, {10, 10}, {10, 0}, {5, 5}}, {0, 2, 2, 2, 2}, capacity);
}

/// Undirected adjacency multiset of every customer, depot as 0.
std::map<int, std::multiset<int>> adjacency(const Individual& ind, int n) {
  std::map<int, std::multiset<int>> adj;
  for (int v = 1; v <= n; ++v) adj[v] = {ind.predecessor(v), ind.successor(v)};
  return adj;
}

/// Broken pairs from the adjacency definition alone.
double broken_pairs_oracle(const Individual& a, const Individual& b, int n) {
  const auto adj_a = adjacency(a, n);
  const auto adj_b = adjacency(b, n);
  int broken = 0;
  for (int v = 1; v <= n; ++v) {
    std::multiset<int> remaining = adj_b.at(v);
    for (int w : adj_a.at(v)) {
      auto it = remaining.find(w);
      if (it == remaining.end()) {
        ++broken;
      } else {
        remaining.erase(it);
      }
    }
  }
  return static_cast<double>(broken) / (2.0 * n);
}

TEST(Individual, CachesTourAndNeighbors) {
  const Instance inst = square_instance();
  const Individual ind(inst, {{1, 2}, {}, {3, 4}});
  EXPECT_EQ(ind.tour(), (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(ind.num_nonempty_routes(), 2);
  EXPECT_EQ(ind.successor(2), 0);
  EXPECT_EQ(ind.predecessor(3), 0);
  EXPECT_EQ(ind.successor(3), 4);
  EXPECT_EQ(ind.total_distance(), 10.0 + 10.0 + 14.0 + 10.0 + 7.0 + 7.0);
}

TEST(Individual, RejectsInvalidPartitions) {
  const Instance inst = square_instance();
  EXPECT_THROW(Individual(inst, {{1, 2, 3}}), std::logic_error);
  EXPECT_THROW(Individual(inst, {{1, 2, 3, 4, 4}}), std::logic_error);
  EXPECT_THROW(Individual(inst, {{1, 2, 3, 5, 4}}), std::logic_error);
}

TEST(Evaluate, FeasibleTotalIsDistance) {
  const Instance inst = square_instance();
  const Individual ind(inst, {{1, 2, 3, 4}});
  const auto cost = hgs::evaluate(ind, 1000.0);
  EXPECT_TRUE(cost.feasible());
  EXPECT_EQ(cost.total(), ind.total_distance());
}

TEST(Evaluate, ExcessFourAtPenaltyTwoAndAHalf) {
  const Instance inst = square_instance(4);
  const Individual ind(inst, {{1, 2, 3, 4}});
  EXPECT_EQ(ind.capacity_excess(), 4);
  EXPECT_EQ(hgs::evaluate(ind, 2.5).total(), ind.total_distance() + 10.0);
}

TEST(Evaluate, CachedMatchesRecomputed) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    const Instance inst = hgs::testing::random_instance(rng, {.customers = n, .capacity_factor = 2.0});
    const auto routes = hgs::testing::random_cut(rng, hgs::testing::random_tour(rng, n), 1 + static_cast<int>(rng() % n));
    const Individual ind(inst, routes);
    const auto a = hgs::evaluate(ind, 3.0);
    const auto b = hgs::evaluate_routes(inst, routes, 3.0);
    ASSERT_EQ(a.distance, b.distance);
    ASSERT_EQ(a.excess, b.excess);
    ASSERT_NEAR(a.total(), hgs::testing::penalized_cost(inst, routes, 3.0), 1e-9);
  }
}

TEST(BrokenPairs, IdenticalIsZero) {
  const Instance inst = square_instance();
  const Individual a(inst, {{1, 2}, {3, 4}});
  EXPECT_EQ(hgs::broken_pairs_distance(a, a), 0.0);
}

TEST(BrokenPairs, ReversedRoutesAreZero) {
  const Instance inst = square_instance();
  const Individual a(inst, {{1, 2}, {3, 4}});
  const Individual b(inst, {{4, 3}, {2, 1}});
  EXPECT_EQ(hgs::broken_pairs_distance(a, b), 0.0);
}

TEST(BrokenPairs, HandExampleIsOneHalf) {
  const Instance inst = square_instance();
  const Individual a(inst, {{1, 2, 3, 4}});
  const Individual b(inst, {{1, 3, 2, 4}});
  EXPECT_DOUBLE_EQ(hgs::broken_pairs_distance(a, b), 0.5);
}

TEST(BrokenPairs, MatchesAdjacencyOracleAndIsSymmetric) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 30);
    const Instance inst = hgs::testing::random_instance(rng, {.customers = n});
    const Individual a(inst, hgs::testing::random_cut(rng, hgs::testing::random_tour(rng, n),
                                                      1 + static_cast<int>(rng() % n)));
    const Individual b(inst, hgs::testing::random_cut(rng, hgs::testing::random_tour(rng, n),
                                                      1 + static_cast<int>(rng() % n)));
    const double d = hgs::broken_pairs_distance(a, b);
    ASSERT_DOUBLE_EQ(d, broken_pairs_oracle(a, b, n));
    ASSERT_DOUBLE_EQ(d, hgs::broken_pairs_distance(b, a));
    ASSERT_GE(d, 0.0);
    ASSERT_LE(d, 1.0);
  }
}

TEST(BiasedFitness, WeightedExample) {
  // member 0: cheapest, and fourth most diverse
  const std::vector<double> costs{1, 2, 3, 4, 5, 6};
  const std::vector<double> diversity{0.3, 0.9, 0.8, 0.7, 0.2, 0.1};
  const auto fit = hgs::biased_fitness(costs, diversity, 4);
  EXPECT_DOUBLE_EQ(fit[0], 0.0 + (1.0 - 4.0 / 6.0) * 3.0);
  EXPECT_DOUBLE_EQ(fit[0], 1.0);
}

TEST(BiasedFitness, WeightVanishesAtEliteSize) {
  const std::vector<double> costs{4, 1, 3, 2};
  const std::vector<double> diversity{0.9, 0.1, 0.5, 0.3};
  const auto fit = hgs::biased_fitness(costs, diversity, 4);
  EXPECT_EQ(fit, (std::vector<double>{3, 0, 2, 1}));
}

TEST(BiasedFitness, MatchesRankFormula) {
  std::mt19937 rng(43);
  for (int trial = 0; trial < 200; ++trial) {
    const int size = 1 + static_cast<int>(rng() % 15);
    const int elite = 1 + static_cast<int>(rng() % 6);
    std::vector<double> costs(size);
    std::vector<double> diversity(size);
    for (int i = 0; i < size; ++i) {
      costs[i] = static_cast<double>(rng() % 10);
      diversity[i] = static_cast<double>(rng() % 5) / 4.0;
    }
    const auto fit = hgs::biased_fitness(costs, diversity, elite);
    const double weight = size <= elite ? 0.0 : 1.0 - static_cast<double>(elite) / size;
    for (int i = 0; i < size; ++i) {
      int cost_rank = 0;
      int div_rank = 0;
      for (int j = 0; j < size; ++j) {
        if (costs[j] < costs[i] || (costs[j] == costs[i] && j < i)) ++cost_rank;
        if (diversity[j] > diversity[i] || (diversity[j] == diversity[i] && j < i)) ++div_rank;
      }
      ASSERT_DOUBLE_EQ(fit[i], cost_rank + weight * div_rank);
    }
  }
}

}  // namespace
