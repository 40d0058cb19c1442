#pragma once

#include <span>
#include <vector>

#include "hgs/instance.hpp"

namespace hgs {

struct PenalizedCost {
  double distance = 0.0;
  long long excess = 0;
  double penalty = 0.0;

  double total() const noexcept { return distance + penalty * static_cast<double>(excess); }
  bool feasible() const noexcept { return excess == 0; }
};

/// A complete CVRP solution: giant tour plus its route decomposition.
///
/// Routes are stored in output order; empty routes are allowed (the local
/// search keeps one slot per vehicle). The giant tour is the concatenation of
/// the routes. Successor/predecessor of a customer use 0 for the depot.
class Individual {
 public:
  Individual(const Instance& instance, std::vector<std::vector<int>> routes);

  const std::vector<int>& tour() const noexcept { return tour_; }
  const std::vector<std::vector<int>>& routes() const noexcept { return routes_; }
  int num_nonempty_routes() const noexcept;

  double total_distance() const noexcept { return distance_; }
  long long capacity_excess() const noexcept { return excess_; }
  bool is_feasible() const noexcept { return excess_ == 0; }
  double penalized_cost(double penalty) const noexcept { return distance_ + penalty * static_cast<double>(excess_); }

  int successor(int customer) const { return successors_[customer]; }
  int predecessor(int customer) const { return predecessors_[customer]; }

 private:
  std::vector<int> tour_;
  std::vector<std::vector<int>> routes_;
  std::vector<int> successors_;
  std::vector<int> predecessors_;
  double distance_ = 0.0;
  long long excess_ = 0;
};

PenalizedCost evaluate(const Individual& individual, double penalty);

/// Recomputes distance and excess from the routes alone; used to check the
/// cached values.
PenalizedCost evaluate_routes(const Instance& instance, const std::vector<std::vector<int>>& routes, double penalty);

/// Throws std::logic_error unless every customer appears in exactly one route.
void check_partition(const Instance& instance, const std::vector<std::vector<int>>& routes);

/// Broken-pairs distance in [0, 1]: for every customer, the number of its two
/// neighbours (predecessor, successor; depot = 0) in `a` that have no match in
/// `b` as a multiset, summed and divided by 2n. Symmetric; 0 iff both
/// solutions have the same undirected adjacency.
double broken_pairs_distance(const Individual& a, const Individual& b);

/// Biased fitness of every member of a subpopulation, lower is better:
/// cost rank + (1 - n_elite/|P|) * diversity rank, both 0-based, cost
/// ascending, diversity contribution descending, ties by position in the
/// input. The diversity weight is 0 when |P| <= n_elite.
std::vector<double> biased_fitness(std::span<const double> costs, std::span<const double> diversity, int n_elite);

}  // namespace hgs
