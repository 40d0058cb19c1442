#include "hgs/split.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace hgs {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kEpsilon = 1e-9;

// Fixed-capacity double-ended queue over tour indices.
class IndexDeque {
 public:
  explicit IndexDeque(std::vector<int>& storage) : data_(storage) {}

  void reset(int first) {
    head_ = 0;
    tail_ = 0;
    data_[0] = first;
  }
  bool empty() const { return tail_ < head_; }
  int size() const { return tail_ - head_ + 1; }
  int front() const { return data_[head_]; }
  int next_front() const { return data_[head_ + 1]; }
  int back() const { return data_[tail_]; }
  void pop_front() { ++head_; }
  void pop_back() { --tail_; }
  void push_back(int i) { data_[++tail_] = i; }

 private:
  std::vector<int>& data_;
  int head_ = 0;
  int tail_ = 0;
};

}  // namespace

double route_cost(const Instance& instance, std::span<const int> tour, int i, int j, double penalty) {
  if (i < 0 || j > static_cast<int>(tour.size()) || i >= j) throw std::out_of_range("route_cost: need 0 <= i < j <= n");
  double dist = instance.dist(0, tour[i]);
  long long load = instance.demand(tour[i]);
  for (int t = i + 1; t < j; ++t) {
    dist += instance.dist(tour[t - 1], tour[t]);
    load += instance.demand(tour[t]);
  }
  dist += instance.dist(tour[j - 1], 0);
  return dist + penalty * static_cast<double>(std::max<long long>(0, load - instance.capacity()));
}

Decomposition split_bellman(const Instance& instance, std::span<const int> tour, double penalty,
                            std::optional<int> fleet_bound) {
  const int n = static_cast<int>(tour.size());
  if (fleet_bound && *fleet_bound < 1) throw std::invalid_argument("split_bellman: fleet bound must be >= 1");
  const int levels = fleet_bound ? std::min(*fleet_bound, n) : 1;
  const long long capacity = instance.capacity();

  // potential[k][t]: best cost of the first t customers with exactly k routes
  // (k collapsed to a single level when the fleet is unbounded).
  std::vector<std::vector<double>> potential(levels + 1, std::vector<double>(n + 1, kInfinity));
  std::vector<std::vector<int>> pred(levels + 1, std::vector<int>(n + 1, -1));
  potential[0][0] = 0.0;

  auto relax_from = [&](const std::vector<double>& source, std::vector<double>& target, std::vector<int>& target_pred,
                        int i) {
    if (source[i] == kInfinity) return;
    double dist = 0.0;
    long long load = 0;
    for (int j = i + 1; j <= n; ++j) {
      load += instance.demand(tour[j - 1]);
      dist += (j == i + 1) ? instance.dist(0, tour[j - 1]) : instance.dist(tour[j - 2], tour[j - 1]);
      const double cost = source[i] + dist + instance.dist(tour[j - 1], 0) +
                          penalty * static_cast<double>(std::max<long long>(0, load - capacity));
      if (cost < target[j]) {
        target[j] = cost;
        target_pred[j] = i;
      }
    }
  };

  Decomposition result;
  std::vector<int> breaks;
  if (!fleet_bound) {
    // Single level: potential[0] is both source and target.
    auto& p = potential[0];
    auto& pr = pred[0];
    for (int i = 0; i < n; ++i) relax_from(p, p, pr, i);
    result.cost = p[n];
    for (int t = n; t > 0; t = pr[t]) breaks.push_back(t);
  } else {
    for (int k = 1; k <= levels; ++k) {
      for (int i = k - 1; i < n; ++i) relax_from(potential[k - 1], potential[k], pred[k], i);
    }
    int best_level = 1;
    for (int k = 1; k <= levels; ++k) {
      if (potential[k][n] < potential[best_level][n]) best_level = k;
    }
    result.cost = potential[best_level][n];
    for (int t = n, k = best_level; t > 0; t = pred[k][t], --k) breaks.push_back(t);
  }

  std::reverse(breaks.begin(), breaks.end());
  int start = 0;
  for (int end : breaks) {
    result.routes.emplace_back(tour.begin() + start, tour.begin() + end);
    start = end;
  }
  return result;
}

Split::Split(const Instance& instance) : instance_(&instance) {
  const int n = instance.num_customers();
  cum_load_.resize(n + 2);
  cum_dist_.resize(n + 2);
  from_depot_.resize(n + 2);
  to_depot_.resize(n + 2);
  potential_.resize(n + 1);
  pred_.resize(n + 1);
  deque_.resize(n + 2);
}

void Split::load(std::span<const int> tour) {
  n_ = static_cast<int>(tour.size());
  if (static_cast<int>(potential_.size()) < n_ + 1) {
    cum_load_.resize(n_ + 2);
    cum_dist_.resize(n_ + 2);
    from_depot_.resize(n_ + 2);
    to_depot_.resize(n_ + 2);
    potential_.resize(n_ + 1);
    pred_.resize(n_ + 1);
    deque_.resize(n_ + 2);
  }
  cum_load_[0] = 0;
  cum_dist_[0] = 0.0;
  cum_dist_[1] = 0.0;
  for (int t = 1; t <= n_; ++t) {
    const int v = tour[t - 1];
    cum_load_[t] = cum_load_[t - 1] + instance_->demand(v);
    if (t > 1) cum_dist_[t] = cum_dist_[t - 1] + instance_->dist(tour[t - 2], v);
    from_depot_[t] = instance_->dist(0, v);
    to_depot_[t] = instance_->dist(v, 0);
  }
}

double Split::arc_cost(const std::vector<double>& potential, int i, int j, double penalty) const {
  const long long excess = cum_load_[j] - cum_load_[i] - instance_->capacity();
  return potential[i] + from_depot_[i + 1] + cum_dist_[j] - cum_dist_[i + 1] + to_depot_[j] +
         penalty * static_cast<double>(std::max<long long>(0, excess));
}

Decomposition Split::extract(std::span<const int> tour, const std::vector<int>& pred, double cost) const {
  Decomposition result;
  result.cost = cost;
  std::vector<int> breaks;
  for (int t = n_; t > 0; t = pred[t]) breaks.push_back(t);
  std::reverse(breaks.begin(), breaks.end());
  int start = 0;
  for (int end : breaks) {
    result.routes.emplace_back(tour.begin() + start, tour.begin() + end);
    start = end;
  }
  return result;
}

Decomposition Split::run_unlimited(std::span<const int> tour, double penalty) {
  load(tour);
  if (n_ == 0) return {};
  auto& p = potential_;
  std::fill(p.begin(), p.begin() + n_ + 1, kInfinity);
  p[0] = 0.0;

  // i dominates j (i < j) as predecessor for every later endpoint.
  auto dominates = [&](int i, int j) {
    return p[j] + from_depot_[j + 1] > p[i] + from_depot_[i + 1] + cum_dist_[j + 1] - cum_dist_[i + 1] +
                                           penalty * static_cast<double>(cum_load_[j] - cum_load_[i]);
  };
  // j dominates i (i < j) for every later endpoint.
  auto dominated_by_later = [&](int i, int j) {
    return p[j] + from_depot_[j + 1] < p[i] + from_depot_[i + 1] + cum_dist_[j + 1] - cum_dist_[i + 1] + kEpsilon;
  };

  IndexDeque queue(deque_);
  queue.reset(0);
  for (int i = 1; i <= n_; ++i) {
    p[i] = arc_cost(p, queue.front(), i, penalty);
    pred_[i] = queue.front();
    if (i < n_) {
      if (!dominates(queue.back(), i)) {
        while (!queue.empty() && dominated_by_later(queue.back(), i)) queue.pop_back();
        queue.push_back(i);
      }
      while (queue.size() > 1 &&
             arc_cost(p, queue.front(), i + 1, penalty) > arc_cost(p, queue.next_front(), i + 1, penalty) - kEpsilon) {
        queue.pop_front();
      }
    }
  }
  return extract(tour, pred_, p[n_]);
}

Decomposition Split::run_limited(std::span<const int> tour, double penalty, int fleet_bound) {
  if (fleet_bound < 1) throw std::invalid_argument("Split: fleet bound must be >= 1");
  load(tour);
  if (n_ == 0) return {};
  const int levels = std::min(fleet_bound, n_);
  if (static_cast<int>(level_potential_.size()) < levels + 1) {
    level_potential_.resize(levels + 1);
    level_pred_.resize(levels + 1);
  }
  for (int k = 0; k <= levels; ++k) {
    level_potential_[k].assign(n_ + 1, kInfinity);
    level_pred_[k].assign(n_ + 1, -1);
  }
  level_potential_[0][0] = 0.0;

  IndexDeque queue(deque_);
  for (int k = 0; k < levels; ++k) {
    const auto& p = level_potential_[k];
    auto& next = level_potential_[k + 1];
    auto& next_pred = level_pred_[k + 1];
    auto dominates = [&](int i, int j) {
      return p[j] + from_depot_[j + 1] > p[i] + from_depot_[i + 1] + cum_dist_[j + 1] - cum_dist_[i + 1] +
                                             penalty * static_cast<double>(cum_load_[j] - cum_load_[i]);
    };
    auto dominated_by_later = [&](int i, int j) {
      return p[j] + from_depot_[j + 1] < p[i] + from_depot_[i + 1] + cum_dist_[j + 1] - cum_dist_[i + 1] + kEpsilon;
    };
    queue.reset(k);
    for (int i = k + 1; i <= n_ && !queue.empty(); ++i) {
      next[i] = arc_cost(p, queue.front(), i, penalty);
      next_pred[i] = queue.front();
      if (i < n_) {
        if (!dominates(queue.back(), i)) {
          while (!queue.empty() && dominated_by_later(queue.back(), i)) queue.pop_back();
          queue.push_back(i);
        }
        while (queue.size() > 1 &&
               arc_cost(p, queue.front(), i + 1, penalty) > arc_cost(p, queue.next_front(), i + 1, penalty) - kEpsilon) {
          queue.pop_front();
        }
      }
    }
  }

  int best_level = 1;
  for (int k = 1; k <= levels; ++k) {
    if (level_potential_[k][n_] < level_potential_[best_level][n_]) best_level = k;
  }

  Decomposition result;
  result.cost = level_potential_[best_level][n_];
  std::vector<int> breaks;
  for (int t = n_, k = best_level; t > 0; t = level_pred_[k][t], --k) breaks.push_back(t);
  std::reverse(breaks.begin(), breaks.end());
  int start = 0;
  for (int end : breaks) {
    result.routes.emplace_back(tour.begin() + start, tour.begin() + end);
    start = end;
  }
  return result;
}

Decomposition Split::run(std::span<const int> tour, double penalty) {
  used_fallback_ = false;
  Decomposition result = run_unlimited(tour, penalty);
  if (static_cast<int>(result.routes.size()) > instance_->fleet_bound()) {
    used_fallback_ = true;
    result = run_limited(tour, penalty, instance_->fleet_bound());
  }
  return result;
}

Decomposition split_linear(const Instance& instance, std::span<const int> tour, double penalty) {
  Split split(instance);
  return split.run(tour, penalty);
}

}  // namespace hgs
