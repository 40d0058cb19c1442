#include "hgs/individual.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hgs {

Individual::Individual(const Instance& instance, std::vector<std::vector<int>> routes) : routes_(std::move(routes)) {
  check_partition(instance, routes_);
  const int n = instance.num_customers();
  tour_.reserve(n);
  successors_.assign(n + 1, 0);
  predecessors_.assign(n + 1, 0);
  for (const auto& route : routes_) {
    long long load = 0;
    int prev = 0;
    for (std::size_t p = 0; p < route.size(); ++p) {
      const int v = route[p];
      tour_.push_back(v);
      distance_ += instance.dist(prev, v);
      load += instance.demand(v);
      predecessors_[v] = prev;
      successors_[v] = p + 1 < route.size() ? route[p + 1] : 0;
      prev = v;
    }
    if (!route.empty()) distance_ += instance.dist(prev, 0);
    excess_ += std::max<long long>(0, load - instance.capacity());
  }
}

int Individual::num_nonempty_routes() const noexcept {
  return static_cast<int>(std::count_if(routes_.begin(), routes_.end(), [](const auto& r) { return !r.empty(); }));
}

PenalizedCost evaluate(const Individual& individual, double penalty) {
  return {individual.total_distance(), individual.capacity_excess(), penalty};
}

PenalizedCost evaluate_routes(const Instance& instance, const std::vector<std::vector<int>>& routes, double penalty) {
  PenalizedCost cost{0.0, 0, penalty};
  for (const auto& route : routes) {
    if (route.empty()) continue;
    long long load = 0;
    int prev = 0;
    for (int v : route) {
      cost.distance += instance.dist(prev, v);
      load += instance.demand(v);
      prev = v;
    }
    cost.distance += instance.dist(prev, 0);
    cost.excess += std::max<long long>(0, load - instance.capacity());
  }
  return cost;
}

void check_partition(const Instance& instance, const std::vector<std::vector<int>>& routes) {
  const int n = instance.num_customers();
  std::vector<char> seen(n + 1, 0);
  int count = 0;
  for (const auto& route : routes) {
    for (int v : route) {
      if (v < 1 || v > n) throw std::logic_error("route contains invalid vertex " + std::to_string(v));
      if (seen[v]) throw std::logic_error("customer " + std::to_string(v) + " visited twice");
      seen[v] = 1;
      ++count;
    }
  }
  if (count != n) throw std::logic_error("routes visit " + std::to_string(count) + " of " + std::to_string(n) + " customers");
}

double broken_pairs_distance(const Individual& a, const Individual& b) {
  const int n = static_cast<int>(a.tour().size());
  if (n == 0) return 0.0;
  int unmatched = 0;
  for (int v : a.tour()) {
    const int pa = a.predecessor(v);
    const int sa = a.successor(v);
    int pb = b.predecessor(v);
    int sb = b.successor(v);
    // Multiset difference {pa, sa} \ {pb, sb}.
    for (int x : {pa, sa}) {
      if (x == pb) {
        pb = -1;
      } else if (x == sb) {
        sb = -1;
      } else {
        ++unmatched;
      }
    }
  }
  return static_cast<double>(unmatched) / (2.0 * n);
}

std::vector<double> biased_fitness(std::span<const double> costs, std::span<const double> diversity, int n_elite) {
  if (costs.size() != diversity.size()) throw std::invalid_argument("biased_fitness: size mismatch");
  const std::size_t size = costs.size();
  std::vector<double> fitness(size, 0.0);
  if (size == 0) return fitness;

  std::vector<std::size_t> by_cost(size);
  std::iota(by_cost.begin(), by_cost.end(), 0);
  std::stable_sort(by_cost.begin(), by_cost.end(), [&](std::size_t x, std::size_t y) { return costs[x] < costs[y]; });
  std::vector<std::size_t> by_diversity(size);
  std::iota(by_diversity.begin(), by_diversity.end(), 0);
  std::stable_sort(by_diversity.begin(), by_diversity.end(),
                   [&](std::size_t x, std::size_t y) { return diversity[x] > diversity[y]; });

  const double weight =
      static_cast<int>(size) <= n_elite ? 0.0 : 1.0 - static_cast<double>(n_elite) / static_cast<double>(size);
  for (std::size_t rank = 0; rank < size; ++rank) {
    fitness[by_cost[rank]] += static_cast<double>(rank);
    fitness[by_diversity[rank]] += weight * static_cast<double>(rank);
  }
  return fitness;
}

}  // namespace hgs
