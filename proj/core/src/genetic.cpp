#include "hgs/genetic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace hgs {

void Params::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(mu >= 1, "mu must be >= 1");
  require(lambda >= 1, "lambda must be >= 1");
  require(n_elite >= 0 && n_elite <= mu, "n_elite must be in [0, mu]");
  require(n_closest >= 1, "n_closest must be >= 1");
  require(target_feasible > 0.0 && target_feasible < 1.0, "target_feasible must be in (0, 1)");
  require(max_iterations_without_improvement >= 1, "iteration limit must be >= 1");
  require(!time_limit || *time_limit > 0.0, "time limit must be positive");
  require(!penalty_init || *penalty_init > 0.0, "initial penalty must be positive");
  require(penalty_increase >= 1.0, "penalty increase factor must be >= 1");
  require(penalty_decrease > 0.0 && penalty_decrease <= 1.0, "penalty decrease factor must be in (0, 1]");
  require(penalty_min > 0.0 && penalty_min <= penalty_max, "penalty bounds out of order");
  require(penalty_window >= 1, "penalty window must be >= 1");
  require(repair_probability >= 0.0 && repair_probability <= 1.0, "repair probability must be in [0, 1]");
  require(repair_multiplier >= 1.0, "repair multiplier must be >= 1");
}

std::vector<int> crossover_ox(std::span<const int> p1, std::span<const int> p2, int a, int b) {
  const int n = static_cast<int>(p1.size());
  if (static_cast<int>(p2.size()) != n) throw std::invalid_argument("crossover_ox: parents differ in length");
  if (n == 0) return {};
  if (a < 0 || a >= n || b < 0 || b >= n) throw std::out_of_range("crossover_ox: cut point out of range");

  const int max_vertex = *std::max_element(p1.begin(), p1.end());
  std::vector<char> taken(max_vertex + 1, 0);
  std::vector<int> child(n, 0);
  int j = a;
  for (;;) {
    child[j] = p1[j];
    taken[p1[j]] = 1;
    if (j == b) break;
    j = (j + 1) % n;
  }
  int slot = (b + 1) % n;
  for (int i = 1; i <= n; ++i) {
    const int c = p2[(b + i) % n];
    if (c > max_vertex || taken[c]) continue;
    child[slot] = c;
    taken[c] = 1;
    slot = (slot + 1) % n;
  }
  return child;
}

std::vector<int> crossover_ox(std::span<const int> p1, std::span<const int> p2, std::mt19937& rng) {
  const int n = static_cast<int>(p1.size());
  if (n == 0) return {};
  std::uniform_int_distribution<int> cut(0, n - 1);
  const int a = cut(rng);
  const int b = cut(rng);
  return crossover_ox(p1, p2, a, b);
}

double initial_penalty(const Instance& instance, const Params& params) {
  double value = 1.0;
  if (instance.total_demand() > 0) {
    const double average_demand = static_cast<double>(instance.total_demand()) / instance.num_customers();
    value = std::max(0.1, instance.average_distance() / average_demand);
  }
  return std::clamp(value, params.penalty_min, params.penalty_max);
}

PenaltyController::PenaltyController(double initial, const Params& params)
    : penalty_(initial),
      target_(params.target_feasible),
      increase_(params.penalty_increase),
      decrease_(params.penalty_decrease),
      min_(params.penalty_min),
      max_(params.penalty_max),
      window_(params.penalty_window, 0) {}

void PenaltyController::record(bool feasible) {
  window_[next_] = feasible ? 1 : 0;
  next_ = (next_ + 1) % window_.size();
  filled_ = std::min(filled_ + 1, window_.size());
}

double PenaltyController::feasible_fraction() const {
  if (filled_ == 0) return 1.0;
  const auto count = std::count(window_.begin(), window_.begin() + static_cast<std::ptrdiff_t>(filled_), 1);
  return static_cast<double>(count) / static_cast<double>(filled_);
}

double PenaltyController::adapt() {
  const double fraction = feasible_fraction();
  if (fraction <= target_ - 0.05) {
    penalty_ *= increase_;
  } else if (fraction >= target_ + 0.05) {
    penalty_ *= decrease_;
  }
  penalty_ = std::clamp(penalty_, min_, max_);
  return penalty_;
}

namespace {

const Params& validated(const Params& params) {
  params.validate();
  return params;
}

}  // namespace

Genetic::Genetic(const Instance& instance, const Params& params)
    : instance_(&instance),
      params_(validated(params)),
      rng_(params.seed),
      split_(instance),
      local_search_(instance, rng_, params.local_search),
      population_(params),
      penalty_(params.penalty_init ? std::clamp(*params.penalty_init, params.penalty_min, params.penalty_max)
                                   : initial_penalty(instance, params),
               params),
      start_(Clock::now()) {}

std::int64_t Genetic::elapsed_ns() const {
  return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start_).count();
}

bool Genetic::out_of_time() const {
  return params_.time_limit && static_cast<double>(elapsed_ns()) * 1e-9 >= *params_.time_limit;
}

Individual Genetic::educate(std::span<const int> tour, double penalty) {
  Decomposition decomposition = split_.run(tour, penalty);
  Individual child(*instance_, std::move(decomposition.routes));
  return local_search_.run(child, penalty);
}

void Genetic::insert(Individual individual, bool& improved_restart_best) {
  const InsertOutcome outcome = population_.add(std::move(individual), penalty_.value());
  if (outcome.improved_restart_best) improved_restart_best = true;
  if (outcome.improved_best) convergence_.push_back({elapsed_ns(), population_.best()->total_distance()});
}

void Genetic::initialize() {
  std::vector<int> tour(instance_->num_customers());
  for (int k = 0; k < 4 * params_.mu; ++k) {
    if (k > 0 && out_of_time()) break;
    std::iota(tour.begin(), tour.end(), 1);
    std::shuffle(tour.begin(), tour.end(), rng_);
    Individual individual = educate(tour, penalty_.value());
    penalty_.record(individual.is_feasible());
    bool ignored = false;
    insert(std::move(individual), ignored);
  }
}

RunResult Genetic::run() {
  start_ = Clock::now();
  convergence_.clear();
  local_search_.reset_stats();

  RunResult result;
  initialize();

  std::bernoulli_distribution repair(params_.repair_probability);
  int without_improvement = 0;
  while (without_improvement < params_.max_iterations_without_improvement && !out_of_time()) {
    ++result.iterations;
    const auto [p1, p2] = population_.select_parents(rng_, penalty_.value());
    const std::vector<int> child_tour = crossover_ox(p1->tour(), p2->tour(), rng_);
    Individual child = educate(child_tour, penalty_.value());
    penalty_.record(child.is_feasible());

    bool improved = false;
    const bool feasible = child.is_feasible();
    std::optional<Individual> unrepaired;
    if (!feasible) unrepaired = child;
    insert(std::move(child), improved);
    if (!feasible && repair(rng_)) {
      Individual repaired = local_search_.run(*unrepaired, penalty_.value() * params_.repair_multiplier);
      insert(std::move(repaired), improved);
    }
    without_improvement = improved ? 0 : without_improvement + 1;

    if (result.iterations % params_.penalty_window == 0) penalty_.adapt();

    if (params_.time_limit && without_improvement == params_.max_iterations_without_improvement && !out_of_time()) {
      population_.restart();
      ++result.restarts;
      without_improvement = 0;
      initialize();
    }
  }

  result.elapsed_ns = elapsed_ns();
  result.final_penalty = penalty_.value();
  result.convergence = convergence_;
  result.local_search = local_search_.stats();
  if (population_.best()) {
    result.best = population_.best();
  } else if (const Individual* fallback = population_.best_infeasible(penalty_.value())) {
    result.best_infeasible = *fallback;
  }
  return result;
}

RunResult solve(const Instance& instance, const Params& params) {
  Genetic genetic(instance, params);
  return genetic.run();
}

}  // namespace hgs
