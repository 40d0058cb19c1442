#pragma once

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "hgs/individual.hpp"
#include "hgs/instance.hpp"
#include "hgs/params.hpp"

namespace hgs {

/// One subpopulation with its pairwise broken-pairs distances. Members keep
/// insertion order.
class Subpopulation {
 public:
  int size() const noexcept { return static_cast<int>(members_.size()); }
  bool empty() const noexcept { return members_.empty(); }
  const Individual& operator[](int i) const { return members_[i]; }
  const std::vector<Individual>& members() const noexcept { return members_; }

  void add(Individual individual);
  void remove(int i);
  void clear();

  double distance(int i, int j) const { return distances_[i][j]; }
  /// Average distance to the `n_closest` nearest other members; 1 for a
  /// singleton.
  double diversity_contribution(int i, int n_closest) const;
  bool has_clone(int i) const;

  std::vector<double> penalized_costs(double penalty) const;
  std::vector<double> fitness(double penalty, int n_elite, int n_closest) const;

  /// Index of the member survivor selection would drop: a clone if any,
  /// otherwise the worst biased fitness. The lowest-cost member is never chosen.
  int worst(double penalty, int n_elite, int n_closest) const;

 private:
  std::vector<Individual> members_;
  std::vector<std::vector<double>> distances_;
};

struct InsertOutcome {
  bool improved_best = false;
  bool improved_restart_best = false;
};

/// Feasible and infeasible subpopulations plus best-found records.
class Population {
 public:
  explicit Population(const Params& params);

  /// Inserts into the subpopulation matching the feasibility and runs
  /// survivor selection when it reaches mu + lambda.
  InsertOutcome add(Individual individual, double penalty);

  /// Empties both subpopulations; the best-ever record survives.
  void restart();

  /// Two independent binary tournaments over the union of both
  /// subpopulations. Requires a nonempty population.
  std::pair<const Individual*, const Individual*> select_parents(std::mt19937& rng, double penalty) const;

  const Subpopulation& feasible() const noexcept { return feasible_; }
  const Subpopulation& infeasible() const noexcept { return infeasible_; }
  int size() const noexcept { return feasible_.size() + infeasible_.size(); }

  const std::optional<Individual>& best() const noexcept { return best_; }
  const std::optional<Individual>& restart_best() const noexcept { return restart_best_; }
  /// Lowest penalized cost among infeasible members.
  const Individual* best_infeasible(double penalty) const;

 private:
  void select_survivors(Subpopulation& subpopulation, double penalty);

  Params params_;
  Subpopulation feasible_;
  Subpopulation infeasible_;
  std::optional<Individual> best_;
  std::optional<Individual> restart_best_;
};

}  // namespace hgs
