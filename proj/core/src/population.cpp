#include "hgs/population.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hgs {

namespace {

constexpr double kCloneDistance = 1e-9;
constexpr double kImprovement = 1e-5;

}  // namespace

void Subpopulation::add(Individual individual) {
  std::vector<double> row;
  row.reserve(members_.size() + 1);
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const double dist = broken_pairs_distance(individual, members_[i]);
    distances_[i].push_back(dist);
    row.push_back(dist);
  }
  row.push_back(0.0);
  distances_.push_back(std::move(row));
  members_.push_back(std::move(individual));
}

void Subpopulation::remove(int i) {
  members_.erase(members_.begin() + i);
  distances_.erase(distances_.begin() + i);
  for (auto& row : distances_) row.erase(row.begin() + i);
}

void Subpopulation::clear() {
  members_.clear();
  distances_.clear();
}

double Subpopulation::diversity_contribution(int i, int n_closest) const {
  if (size() <= 1) return 1.0;
  std::vector<double> others;
  others.reserve(members_.size() - 1);
  for (int j = 0; j < size(); ++j) {
    if (j != i) others.push_back(distances_[i][j]);
  }
  const int k = std::min<int>(n_closest, static_cast<int>(others.size()));
  std::partial_sort(others.begin(), others.begin() + k, others.end());
  return std::accumulate(others.begin(), others.begin() + k, 0.0) / k;
}

bool Subpopulation::has_clone(int i) const {
  for (int j = 0; j < size(); ++j) {
    if (j != i && distances_[i][j] < kCloneDistance) return true;
  }
  return false;
}

std::vector<double> Subpopulation::penalized_costs(double penalty) const {
  std::vector<double> costs;
  costs.reserve(members_.size());
  for (const auto& m : members_) costs.push_back(m.penalized_cost(penalty));
  return costs;
}

std::vector<double> Subpopulation::fitness(double penalty, int n_elite, int n_closest) const {
  const std::vector<double> costs = penalized_costs(penalty);
  std::vector<double> diversity(members_.size());
  for (int i = 0; i < size(); ++i) diversity[i] = diversity_contribution(i, n_closest);
  return biased_fitness(costs, diversity, n_elite);
}

int Subpopulation::worst(double penalty, int n_elite, int n_closest) const {
  if (size() <= 1) return -1;
  const std::vector<double> costs = penalized_costs(penalty);
  const int best = static_cast<int>(std::min_element(costs.begin(), costs.end()) - costs.begin());
  const std::vector<double> fit = fitness(penalty, n_elite, n_closest);
  int worst = -1;
  bool worst_is_clone = false;
  for (int i = 0; i < size(); ++i) {
    if (i == best) continue;
    const bool clone = has_clone(i);
    if (worst < 0 || (clone && !worst_is_clone) || (clone == worst_is_clone && fit[i] > fit[worst])) {
      worst = i;
      worst_is_clone = clone;
    }
  }
  return worst;
}

Population::Population(const Params& params) : params_(params) {}

InsertOutcome Population::add(Individual individual, double penalty) {
  InsertOutcome outcome;
  if (individual.is_feasible()) {
    const double cost = individual.total_distance();
    if (!restart_best_ || cost < restart_best_->total_distance() - kImprovement) {
      restart_best_ = individual;
      outcome.improved_restart_best = true;
    }
    if (!best_ || cost < best_->total_distance() - kImprovement) {
      best_ = individual;
      outcome.improved_best = true;
    }
  }
  Subpopulation& target = individual.is_feasible() ? feasible_ : infeasible_;
  target.add(std::move(individual));
  if (target.size() >= params_.mu + params_.lambda) select_survivors(target, penalty);
  return outcome;
}

void Population::select_survivors(Subpopulation& subpopulation, double penalty) {
  while (subpopulation.size() > params_.mu) {
    const int worst = subpopulation.worst(penalty, params_.n_elite, params_.n_closest);
    if (worst < 0) break;
    subpopulation.remove(worst);
  }
}

void Population::restart() {
  feasible_.clear();
  infeasible_.clear();
  restart_best_.reset();
}

std::pair<const Individual*, const Individual*> Population::select_parents(std::mt19937& rng, double penalty) const {
  const int total = size();
  if (total == 0) throw std::logic_error("select_parents: empty population");
  const std::vector<double> fit_feasible = feasible_.fitness(penalty, params_.n_elite, params_.n_closest);
  const std::vector<double> fit_infeasible = infeasible_.fitness(penalty, params_.n_elite, params_.n_closest);
  auto member = [&](int k) { return k < feasible_.size() ? &feasible_[k] : &infeasible_[k - feasible_.size()]; };
  auto fitness = [&](int k) {
    return k < feasible_.size() ? fit_feasible[k] : fit_infeasible[k - feasible_.size()];
  };
  std::uniform_int_distribution<int> pick(0, total - 1);
  auto tournament = [&] {
    const int a = pick(rng);
    const int b = pick(rng);
    return fitness(b) < fitness(a) ? member(b) : member(a);
  };
  const Individual* first = tournament();
  const Individual* second = tournament();
  return {first, second};
}

const Individual* Population::best_infeasible(double penalty) const {
  const Individual* best = nullptr;
  for (const auto& m : infeasible_.members()) {
    if (!best || m.penalized_cost(penalty) < best->penalized_cost(penalty)) best = &m;
  }
  return best;
}

}  // namespace hgs
