#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "hgs/individual.hpp"
#include "hgs/instance.hpp"
#include "hgs/local_search.hpp"
#include "hgs/params.hpp"
#include "hgs/population.hpp"
#include "hgs/split.hpp"

namespace hgs {

/// OX crossover with explicit cut points (0-based, inclusive). The child
/// keeps p1 at positions a..b, wrapping around the end when a > b; the other
/// positions are filled from b+1 onward with the missing customers in the
/// order they appear in p2 starting at b+1.
std::vector<int> crossover_ox(std::span<const int> p1, std::span<const int> p2, int a, int b);

/// OX crossover with two independent uniform cut points.
std::vector<int> crossover_ox(std::span<const int> p1, std::span<const int> p2, std::mt19937& rng);

/// max(0.1, average distance / average demand), clamped to the penalty range.
double initial_penalty(const Instance& instance, const Params& params);

/// Feasibility outcomes of the most recent local searches and the penalty
/// they drive.
class PenaltyController {
 public:
  PenaltyController(double initial, const Params& params);

  double value() const noexcept { return penalty_; }
  void record(bool feasible);
  /// Fraction of feasible outcomes in the window (1 when empty).
  double feasible_fraction() const;
  /// Applies the adaptation rule once and returns the new penalty.
  double adapt();

 private:
  double penalty_;
  double target_;
  double increase_;
  double decrease_;
  double min_;
  double max_;
  std::vector<char> window_;
  std::size_t next_ = 0;
  std::size_t filled_ = 0;
};

struct ConvergencePoint {
  std::int64_t elapsed_ns = 0;
  double cost = 0.0;
};

struct RunResult {
  /// Best feasible solution ever found.
  std::optional<Individual> best;
  /// Set only when no feasible solution was found.
  std::optional<Individual> best_infeasible;
  std::int64_t iterations = 0;
  int restarts = 0;
  std::int64_t elapsed_ns = 0;
  double final_penalty = 0.0;
  std::vector<ConvergencePoint> convergence;
  LocalSearchStats local_search;

  bool feasible() const noexcept { return best.has_value(); }
};

/// The genetic search. One instance per run; not thread-safe.
class Genetic {
 public:
  Genetic(const Instance& instance, const Params& params);

  RunResult run();

  /// Split + local search on a giant tour.
  Individual educate(std::span<const int> tour, double penalty);
  /// Fills the population with 4 mu educated random solutions (stops early
  /// when the time budget is spent).
  void initialize();

  const Population& population() const noexcept { return population_; }
  const PenaltyController& penalty() const noexcept { return penalty_; }
  std::mt19937& rng() noexcept { return rng_; }
  const Params& params() const noexcept { return params_; }

 private:
  using Clock = std::chrono::steady_clock;

  bool out_of_time() const;
  std::int64_t elapsed_ns() const;
  void insert(Individual individual, bool& improved_restart_best);

  const Instance* instance_;
  Params params_;
  std::mt19937 rng_;
  Split split_;
  LocalSearch local_search_;
  Population population_;
  PenaltyController penalty_;
  Clock::time_point start_;
  std::vector<ConvergencePoint> convergence_;
};

/// Convenience wrapper: Genetic(instance, params).run().
RunResult solve(const Instance& instance, const Params& params);

}  // namespace hgs
