#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hgs/instance.hpp"

namespace hgs {

/// Routes in giant-tour order (each nonempty) and their total penalized cost.
struct Decomposition {
  std::vector<std::vector<int>> routes;
  double cost = 0.0;
};

/// Penalized cost of the route visiting tour positions i+1..j (1-based,
/// 0 <= i < j <= tour.size()).
double route_cost(const Instance& instance, std::span<const int> tour, int i, int j, double penalty);

/// Reference Split: Bellman recursion over all arcs of the auxiliary DAG,
/// level by level when a fleet bound is given. Quadratic; meant as an oracle.
Decomposition split_bellman(const Instance& instance, std::span<const int> tour, double penalty,
                            std::optional<int> fleet_bound = std::nullopt);

/// Linear-time Split with linearly penalized capacity excess. Reusable
/// workspace; one per thread.
class Split {
 public:
  explicit Split(const Instance& instance);

  /// Optimal soft split with an unlimited fleet; when that uses more routes
  /// than the instance fleet bound, re-solves with the bound enforced.
  Decomposition run(std::span<const int> tour, double penalty);

  /// Unlimited-fleet variant only.
  Decomposition run_unlimited(std::span<const int> tour, double penalty);

  /// At most `fleet_bound` routes.
  Decomposition run_limited(std::span<const int> tour, double penalty, int fleet_bound);

  /// Whether the last `run` call needed the fleet-limited fallback.
  bool used_fallback() const noexcept { return used_fallback_; }

 private:
  void load(std::span<const int> tour);
  double arc_cost(const std::vector<double>& potential, int i, int j, double penalty) const;
  Decomposition extract(std::span<const int> tour, const std::vector<int>& pred, double cost) const;

  const Instance* instance_;
  int n_ = 0;
  std::vector<long long> cum_load_;
  std::vector<double> cum_dist_;
  std::vector<double> from_depot_;
  std::vector<double> to_depot_;
  std::vector<double> potential_;
  std::vector<int> pred_;
  std::vector<int> deque_;
  std::vector<std::vector<double>> level_potential_;
  std::vector<std::vector<int>> level_pred_;
  bool used_fallback_ = false;
};

/// Convenience wrapper around Split::run.
Decomposition split_linear(const Instance& instance, std::span<const int> tour, double penalty);

}  // namespace hgs
