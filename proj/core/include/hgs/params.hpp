#pragma once

#include <cstdint>
#include <optional>

#include "hgs/local_search.hpp"

namespace hgs {

/// Parameters of the genetic search. The granularity lives in
/// InstanceOptions because neighbor lists are part of the instance.
struct Params {
  int mu = 25;
  int lambda = 40;
  int n_elite = 4;
  int n_closest = 5;
  double target_feasible = 0.2;
  int max_iterations_without_improvement = 20000;
  /// Wall-clock budget in seconds; restarts after each stagnation phase
  /// until it expires. Without it the run stops at the first stagnation.
  std::optional<double> time_limit;
  std::uint32_t seed = 1;

  /// Defaults to max(0.1, average distance / average demand).
  std::optional<double> penalty_init;
  double penalty_increase = 1.2;
  double penalty_decrease = 0.85;
  double penalty_min = 0.1;
  double penalty_max = 100000.0;
  int penalty_window = 100;

  double repair_probability = 0.5;
  double repair_multiplier = 10.0;

  LocalSearchOptions local_search;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

}  // namespace hgs
