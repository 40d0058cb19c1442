#include "hgs/local_search.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hgs {

namespace {

constexpr double kEpsilon = 1e-5;
constexpr double kDeltaTolerance = 1e-6;

}  // namespace

double insertion_delta(const Instance& instance, int v, int i, int j) {
  return instance.dist(i, v) + instance.dist(v, j) - instance.dist(i, j);
}

void ThreeBest::reset() {
  cost = {kMissing, kMissing, kMissing};
  location = {-1, -1, -1};
}

void ThreeBest::add(double insertion_cost, int where) {
  if (insertion_cost >= cost[2]) return;
  if (insertion_cost >= cost[1]) {
    cost[2] = insertion_cost;
    location[2] = where;
  } else if (insertion_cost >= cost[0]) {
    cost[2] = cost[1];
    location[2] = location[1];
    cost[1] = insertion_cost;
    location[1] = where;
  } else {
    cost[2] = cost[1];
    location[2] = location[1];
    cost[1] = cost[0];
    location[1] = location[0];
    cost[0] = insertion_cost;
    location[0] = where;
  }
}

ThreeBest find_top3(const Instance& instance, int v, std::span<const int> route) {
  if (route.empty()) throw std::invalid_argument("find_top3: empty route");
  ThreeBest best;
  const int size = static_cast<int>(route.size());
  for (int p = 0; p <= size; ++p) {
    const int i = p == 0 ? 0 : route[p - 1];
    const int j = p == size ? 0 : route[p];
    best.add(insertion_delta(instance, v, i, j), p);
  }
  return best;
}

const char* neighborhood_name(Neighborhood n) {
  switch (n) {
    case Neighborhood::kRelocate:
      return "relocate";
    case Neighborhood::kSwap:
      return "swap";
    case Neighborhood::kTwoOpt:
      return "two_opt";
    case Neighborhood::kTwoOptStar:
      return "two_opt_star";
    case Neighborhood::kSwapStar:
      return "swap_star";
  }
  return "unknown";
}

void LocalSearchStats::merge(const LocalSearchStats& other) {
  for (int k = 0; k < kNumNeighborhoods; ++k) {
    neighborhoods[k].first_loop_improvements += other.neighborhoods[k].first_loop_improvements;
    neighborhoods[k].later_improvements += other.neighborhoods[k].later_improvements;
    neighborhoods[k].time_ns += other.neighborhoods[k].time_ns;
  }
  descents += other.descents;
  moves += other.moves;
  swap_star_pairs += other.swap_star_pairs;
  swap_star_evaluations += other.swap_star_evaluations;
  delta_checks += other.delta_checks;
  delta_violations += other.delta_violations;
  max_delta_error = std::max(max_delta_error, other.max_delta_error);
  skipped_pairs += other.skipped_pairs;
  improving_skipped_pairs += other.improving_skipped_pairs;
}

LocalSearch::LocalSearch(const Instance& instance, std::mt19937& rng, LocalSearchOptions options)
    : instance_(&instance),
      rng_(&rng),
      options_(options),
      dist_(instance.dist_row(0)),
      stride_(static_cast<std::size_t>(instance.num_vertices())) {
  const int n = instance.num_customers();
  customers_.resize(n + 1);
  neighbors_.resize(n + 1);
  for (int c = 1; c <= n; ++c) {
    customers_[c].vertex = c;
    auto nb = instance.neighbors(c);
    neighbors_[c].assign(nb.begin(), nb.end());
  }
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), 1);
}

double LocalSearch::excess_penalty(long long load) const {
  return penalty_ * static_cast<double>(std::max<long long>(0, load - instance_->capacity()));
}

Individual LocalSearch::run(const Individual& individual, double penalty) {
  load(individual, penalty);
  descend();
  return export_individual();
}

void LocalSearch::load(const Individual& individual, double penalty) {
  penalty_ = penalty;
  ++move_counter_;

  std::vector<const std::vector<int>*> nonempty;
  for (const auto& r : individual.routes()) {
    if (!r.empty()) nonempty.push_back(&r);
  }
  const int m = std::max(instance_->fleet_bound(), static_cast<int>(nonempty.size()));
  const int n = instance_->num_customers();
  if (static_cast<int>(routes_.size()) != m) {
    routes_.assign(m, Route{});
    start_depots_.assign(m, Node{});
    end_depots_.assign(m, Node{});
    three_best_.assign(static_cast<std::size_t>(m) * (n + 1), CachedThreeBest{});
    route_order_.resize(m);
  }
  std::iota(route_order_.begin(), route_order_.end(), 0);

  for (int r = 0; r < m; ++r) {
    Route& route = routes_[r];
    route.id = r;
    route.last_tested_swap_star = -1;
    route.start = &start_depots_[r];
    route.end = &end_depots_[r];
    for (Node* depot : {route.start, route.end}) {
      depot->vertex = 0;
      depot->is_depot = true;
      depot->route = &route;
    }
    Node* prev = route.start;
    if (r < static_cast<int>(nonempty.size())) {
      for (int c : *nonempty[r]) {
        Node* node = &customers_[c];
        node->route = &route;
        node->prev = prev;
        prev->next = node;
        prev = node;
      }
    }
    prev->next = route.end;
    route.end->prev = prev;
    route.start->prev = route.end;
    route.end->next = route.start;
    update_route(route);
  }
  for (int c = 1; c <= n; ++c) customers_[c].last_tested = -1;
}

void LocalSearch::update_route(Route& route) {
  int position = 0;
  long long load = 0;
  double distance = 0.0;
  double sum_x = 0.0;
  double sum_y = 0.0;
  Node* node = route.start;
  node->position = 0;
  node->cum_load = 0;
  bool first = true;
  do {
    Node* next = node->next;
    distance += d(node, next);
    next->position = ++position;
    if (!next->is_depot) {
      load += demand(next);
      const int angle = instance_->polar(next->vertex);
      if (first) {
        route.sector = CircleSector::at(angle);
        first = false;
      } else {
        route.sector.extend(angle);
      }
      const Point p = instance_->coord(next->vertex);
      sum_x += p.x;
      sum_y += p.y;
    }
    next->cum_load = load;
    node = next;
  } while (!node->is_depot);

  route.size = position - 1;
  route.load = load;
  route.distance = distance;
  route.penalty = excess_penalty(load);
  route.last_modified = move_counter_;
  if (route.size > 0) {
    const Point depot = instance_->coord(0);
    route.barycenter_angle = std::atan2(sum_y / route.size - depot.y, sum_x / route.size - depot.x);
  } else {
    route.barycenter_angle = 1.e30;
  }
}

void LocalSearch::set_route_sequence(Route& route, const std::vector<Node*>& sequence) {
  Node* prev = route.start;
  for (Node* node : sequence) {
    node->route = &route;
    node->prev = prev;
    prev->next = node;
    prev = node;
  }
  prev->next = route.end;
  route.end->prev = prev;
}

void LocalSearch::insert_after(Node* u, Node* v) {
  u->prev->next = u->next;
  u->next->prev = u->prev;
  v->next->prev = u;
  u->prev = v;
  u->next = v->next;
  v->next = u;
  u->route = v->route;
}

void LocalSearch::swap_nodes(Node* u, Node* v) {
  assert(u->next != v && v->next != u);
  Node* pu = u->prev;
  Node* nu = u->next;
  Node* pv = v->prev;
  Node* nv = v->next;
  Route* ru = u->route;
  Route* rv = v->route;
  pu->next = v;
  nu->prev = v;
  pv->next = u;
  nv->prev = u;
  u->prev = pv;
  u->next = nv;
  v->prev = pu;
  v->next = nu;
  u->route = rv;
  v->route = ru;
}

LocalSearch::Route* LocalSearch::first_empty_route() {
  for (Route& route : routes_) {
    if (route.size == 0) return &route;
  }
  return nullptr;
}

void LocalSearch::descend() {
  ++stats_.descents;
  swap_star_sweeps_ = 0;
  for (int c = 1; c <= instance_->num_customers(); ++c) std::shuffle(neighbors_[c].begin(), neighbors_[c].end(), *rng_);

  int pass = 0;
  auto classical_until_stable = [&] {
    bool improved = false;
    do {
      improved = classical_pass(pass);
      ++pass;
    } while (improved || pass <= 1);
  };
  classical_until_stable();
  if (!options_.swap_star) return;
  while (swap_star_sweep()) classical_until_stable();
}

template <class F>
bool LocalSearch::timed(Neighborhood family, F&& explore) {
  if (!options_.collect_timing || dry_run_) return explore();
  const auto start = std::chrono::steady_clock::now();
  const bool applied = explore();
  stats_[family].time_ns +=
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
  return applied;
}

bool LocalSearch::classical_pass(int pass) {
  std::shuffle(order_.begin(), order_.end(), *rng_);
  bool applied = false;
  for (int c : order_) {
    Node* u = &customers_[c];
    const long long last_tested = u->last_tested;
    u->last_tested = move_counter_;
    for (int vertex : neighbors_[c]) {
      Node* v = &customers_[vertex];
      if (std::max(u->route->last_modified, v->route->last_modified) > last_tested) {
        if (try_neighbor(u, v, pass)) applied = true;
      } else if (options_.verify_skips) {
        ++stats_.skipped_pairs;
        dry_run_ = true;
        if (try_neighbor(u, v, pass)) ++stats_.improving_skipped_pairs;
        dry_run_ = false;
      }
    }
    if (pass > 0) {
      if (Route* empty = first_empty_route()) {
        if (try_empty_route(u, *empty, pass)) applied = true;
      }
    }
  }
  return applied;
}

void LocalSearch::bind(Node* u, Node* v) {
  u_ = u;
  x_ = u->next;
  v_ = v;
  y_ = v->next;
  route_u_ = u->route;
  route_v_ = v->route;
}

bool LocalSearch::try_neighbor(Node* u, Node* v, int pass) {
  bind(u, v);
  if (timed(Neighborhood::kRelocate,
            [&] { return move_relocate(pass) || move_relocate_pair(pass) || move_relocate_pair_reversed(pass); })) {
    return true;
  }
  if (timed(Neighborhood::kSwap,
            [&] { return move_swap(pass) || move_swap_pair_single(pass) || move_swap_pairs(pass); })) {
    return true;
  }
  if (route_u_ == route_v_) {
    if (timed(Neighborhood::kTwoOpt, [&] { return move_two_opt(pass); })) return true;
  } else {
    if (timed(Neighborhood::kTwoOptStar,
              [&] { return move_two_opt_star_reversed(pass) || move_two_opt_star(pass); })) {
      return true;
    }
  }

  if (v->prev->is_depot) {
    bind(u, v->prev);
    if (timed(Neighborhood::kRelocate,
              [&] { return move_relocate(pass) || move_relocate_pair(pass) || move_relocate_pair_reversed(pass); })) {
      return true;
    }
    if (route_u_ != route_v_ &&
        timed(Neighborhood::kTwoOptStar,
              [&] { return move_two_opt_star_reversed(pass) || move_two_opt_star(pass); })) {
      return true;
    }
  }
  return false;
}

bool LocalSearch::try_empty_route(Node* u, Route& empty, int pass) {
  bind(u, empty.start);
  if (timed(Neighborhood::kRelocate,
            [&] { return move_relocate(pass) || move_relocate_pair(pass) || move_relocate_pair_reversed(pass); })) {
    return true;
  }
  return timed(Neighborhood::kTwoOptStar, [&] { return move_two_opt_star(pass); });
}

double LocalSearch::begin_move() const { return options_.verify_deltas ? penalized_cost() : 0.0; }

void LocalSearch::end_move(double before, double delta, Route& a, Route& b, Neighborhood family, bool first_loop) {
  ++move_counter_;
  ++stats_.moves;
  update_route(a);
  if (&b != &a) update_route(b);
  auto& counters = stats_[family];
  if (first_loop) {
    ++counters.first_loop_improvements;
  } else {
    ++counters.later_improvements;
  }
  if (options_.verify_deltas) {
    const double error = std::abs(recompute_penalized_cost() - (before + delta));
    ++stats_.delta_checks;
    if (error > kDeltaTolerance) ++stats_.delta_violations;
    stats_.max_delta_error = std::max(stats_.max_delta_error, error);
  }
}

// Relocate u after v.
bool LocalSearch::move_relocate(int pass) {
  if (u_ == y_) return false;
  double cost_u = d(u_->prev, x_) - d(u_->prev, u_) - d(u_, x_);
  double cost_v = d(v_, u_) + d(u_, y_) - d(v_, y_);
  if (route_u_ != route_v_) {
    if (cost_u + cost_v >= route_u_->penalty + route_v_->penalty) return false;
    const int du = demand(u_);
    cost_u += excess_penalty(route_u_->load - du) - route_u_->penalty;
    cost_v += excess_penalty(route_v_->load + du) - route_v_->penalty;
  }
  const double delta = cost_u + cost_v;
  if (delta > -kEpsilon) return false;
  if (dry_run_) return true;
  const double before = begin_move();
  insert_after(u_, v_);
  end_move(before, delta, *route_u_, *route_v_, Neighborhood::kRelocate, pass == 0);
  return true;
}

// Relocate (u, x) after v.
bool LocalSearch::move_relocate_pair(int pass) {
  if (u_ == y_ || v_ == x_ || x_->is_depot) return false;
  Node* xn = x_->next;
  double cost_u = d(u_->prev, xn) - d(u_->prev, u_) - d(x_, xn);
  double cost_v = d(v_, u_) + d(x_, y_) - d(v_, y_);
  if (route_u_ != route_v_) {
    if (cost_u + cost_v >= route_u_->penalty + route_v_->penalty) return false;
    const int moved = demand(u_) + demand(x_);
    cost_u += excess_penalty(route_u_->load - moved) - route_u_->penalty;
    cost_v += excess_penalty(route_v_->load + moved) - route_v_->penalty;
  }
  const double delta = cost_u + cost_v;
  if (delta > -kEpsilon) return false;
  if (dry_run_) return true;
  const double before = begin_move();
  Node* x = x_;
  insert_after(u_, v_);
  insert_after(x, u_);
  end_move(before, delta, *route_u_, *route_v_, Neighborhood::kRelocate, pass == 0);
  return true;
}

// Relocate (u, x) after v as (x, u).
bool LocalSearch::move_relocate_pair_reversed(int pass) {
  if (u_ == y_ || x_ == v_ || x_->is_depot) return false;
  Node* xn = x_->next;
  double cost_u = d(u_->prev, xn) - d(u_->prev, u_) - d(u_, x_) - d(x_, xn);
  double cost_v = d(v_, x_) + d(x_, u_) + d(u_, y_) - d(v_, y_);
  if (route_u_ != route_v_) {
    if (cost_u + cost_v >= route_u_->penalty + route_v_->penalty) return false;
    const int moved = demand(u_) + demand(x_);
    cost_u += excess_penalty(route_u_->load - moved) - route_u_->penalty;
    cost_v += excess_penalty(route_v_->load + moved) - route_v_->penalty;
  }
  const double delta = cost_u + cost_v;
  if (delta > -kEpsilon) return false;
  if (dry_run_) return true;
  const double before = begin_move();
  Node* x = x_;
  insert_after(x, v_);
  insert_after(u_, x);
  end_move(before, delta, *route_u_, *route_v_, Neighborhood::kRelocate, pass == 0);
  return true;
}

// Swap u and v.
bool LocalSearch::move_swap(int pass) {
  if (v_->is_depot || u_ == v_->prev || u_ == y_) return false;
  double cost_u = d(u_->prev, v_) + d(v_, x_) - d(u_->prev, u_) - d(u_, x_);
  double cost_v = d(v_->prev, u_) + d(u_, y_) - d(v_->prev, v_) - d(v_, y_);
  if (route_u_ != route_v_) {
    if (cost_u + cost_v >= route_u_->penalty + route_v_->penalty) return false;
    const int shift = demand(v_) - demand(u_);
    cost_u += excess_penalty(route_u_->load + shift) - route_u_->penalty;
    cost_v += excess_penalty(route_v_->load - shift) - route_v_->penalty;
  }
  const double delta = cost_u + cost_v;
  if (delta > -kEpsilon) return false;
  if (dry_run_) return true;
  const double before = begin_move();
  swap_nodes(u_, v_);
  end_move(before, delta, *route_u_, *route_v_, Neighborhood::kSwap, pass == 0);
  return true;
}

// Swap (u, x) and v.
bool LocalSearch::move_swap_pair_single(int pass) {
  if (v_->is_depot || x_->is_depot || u_ == v_->prev || x_ == v_->prev || u_ == y_) return false;
  Node* xn = x_->next;
  double cost_u = d(u_->prev, v_) + d(v_, xn) - d(u_->prev, u_) - d(x_, xn);
  double cost_v = d(v_->prev, u_) + d(x_, y_) - d(v_->prev, v_) - d(v_, y_);
  if (route_u_ != route_v_) {
    if (cost_u + cost_v >= route_u_->penalty + route_v_->penalty) return false;
    const int shift = demand(v_) - demand(u_) - demand(x_);
    cost_u += excess_penalty(route_u_->load + shift) - route_u_->penalty;
    cost_v += excess_penalty(route_v_->load - shift) - route_v_->penalty;
  }
  const double delta = cost_u + cost_v;
  if (delta > -kEpsilon) return false;
  if (dry_run_) return true;
  const double before = begin_move();
  Node* x = x_;
  swap_nodes(u_, v_);
  insert_after(x, u_);
  end_move(before, delta, *route_u_, *route_v_, Neighborhood::kSwap, pass == 0);
  return true;
}

// Swap (u, x) and (v, y).
bool LocalSearch::move_swap_pairs(int pass) {
  if (v_->is_depot || x_->is_depot || y_->is_depot || y_ == u_->prev || u_ == y_ || x_ == v_ || v_ == x_->next) {
    return false;
  }
  Node* xn = x_->next;
  Node* yn = y_->next;
  double cost_u = d(u_->prev, v_) + d(y_, xn) - d(u_->prev, u_) - d(x_, xn);
  double cost_v = d(v_->prev, u_) + d(x_, yn) - d(v_->prev, v_) - d(y_, yn);
  if (route_u_ != route_v_) {
    if (cost_u + cost_v >= route_u_->penalty + route_v_->penalty) return false;
    const int shift = demand(v_) + demand(y_) - demand(u_) - demand(x_);
    cost_u += excess_penalty(route_u_->load + shift) - route_u_->penalty;
    cost_v += excess_penalty(route_v_->load - shift) - route_v_->penalty;
  }
  const double delta = cost_u + cost_v;
  if (delta > -kEpsilon) return false;
  if (dry_run_) return true;
  const double before = begin_move();
  Node* x = x_;
  Node* y = y_;
  swap_nodes(u_, v_);
  swap_nodes(x, y);
  end_move(before, delta, *route_u_, *route_v_, Neighborhood::kSwap, pass == 0);
  return true;
}

// Intra-route 2-Opt: replace (u, x), (v, y) by (u, v), (x, y), reversing x..v.
bool LocalSearch::move_two_opt(int pass) {
  if (v_->is_depot || u_->position > v_->position) return false;
  const double delta = d(u_, v_) + d(x_, y_) - d(u_, x_) - d(v_, y_);
  if (delta > -kEpsilon) return false;
  if (dry_run_) return true;
  const double before = begin_move();
  std::vector<Node*> sequence;
  sequence.reserve(route_u_->size);
  for (Node* node = route_u_->start->next; node != x_; node = node->next) sequence.push_back(node);
  for (Node* node = v_; node != u_; node = node->prev) sequence.push_back(node);
  for (Node* node = y_; !node->is_depot; node = node->next) sequence.push_back(node);
  set_route_sequence(*route_u_, sequence);
  end_move(before, delta, *route_u_, *route_u_, Neighborhood::kTwoOpt, pass == 0);
  return true;
}

// 2-Opt* joining u to v and x to y: the routes become
// (start_u .. u, v .. start_v) and (end_u .. x, y .. end_v).
bool LocalSearch::move_two_opt_star_reversed(int pass) {
  double cost = d(u_, v_) + d(x_, y_) - d(u_, x_) - d(v_, y_) - route_u_->penalty - route_v_->penalty;
  if (cost >= 0) return false;
  cost += excess_penalty(u_->cum_load + v_->cum_load) +
          excess_penalty(route_u_->load + route_v_->load - u_->cum_load - v_->cum_load);
  if (cost > -kEpsilon) return false;
  if (dry_run_) return true;
  const double before = begin_move();
  std::vector<Node*> first;
  std::vector<Node*> second;
  for (Node* node = route_u_->start->next; node != x_; node = node->next) first.push_back(node);
  for (Node* node = v_; !node->is_depot; node = node->prev) first.push_back(node);
  for (Node* node = route_u_->end->prev; node != u_; node = node->prev) second.push_back(node);
  for (Node* node = y_; !node->is_depot; node = node->next) second.push_back(node);
  set_route_sequence(*route_u_, first);
  set_route_sequence(*route_v_, second);
  end_move(before, cost, *route_u_, *route_v_, Neighborhood::kTwoOptStar, pass == 0);
  return true;
}

// 2-Opt* exchanging tails: (start_u .. u, y .. end_v) and (start_v .. v, x .. end_u).
bool LocalSearch::move_two_opt_star(int pass) {
  double cost = d(u_, y_) + d(v_, x_) - d(u_, x_) - d(v_, y_) - route_u_->penalty - route_v_->penalty;
  if (cost >= 0) return false;
  cost += excess_penalty(u_->cum_load + route_v_->load - v_->cum_load) +
          excess_penalty(v_->cum_load + route_u_->load - u_->cum_load);
  if (cost > -kEpsilon) return false;
  if (dry_run_) return true;
  const double before = begin_move();
  std::vector<Node*> first;
  std::vector<Node*> second;
  for (Node* node = route_u_->start->next; node != x_; node = node->next) first.push_back(node);
  for (Node* node = y_; !node->is_depot; node = node->next) first.push_back(node);
  for (Node* node = route_v_->start->next; node != y_; node = node->next) second.push_back(node);
  for (Node* node = x_; !node->is_depot; node = node->next) second.push_back(node);
  set_route_sequence(*route_u_, first);
  set_route_sequence(*route_v_, second);
  end_move(before, cost, *route_u_, *route_v_, Neighborhood::kTwoOptStar, pass == 0);
  return true;
}

bool LocalSearch::swap_star_sweep() {
  ++swap_star_sweeps_;
  const bool first_loop = swap_star_sweeps_ == 1;
  std::shuffle(route_order_.begin(), route_order_.end(), *rng_);
  bool applied = false;
  for (int a : route_order_) {
    Route& route_u = routes_[a];
    const long long last_tested = route_u.last_tested_swap_star;
    route_u.last_tested_swap_star = move_counter_;
    for (int b : route_order_) {
      Route& route_v = routes_[b];
      if (route_u.size == 0 || route_v.size == 0 || route_u.id >= route_v.id) continue;
      if (std::max(route_u.last_modified, route_v.last_modified) <= last_tested) continue;
      if (options_.sector_filter && !sectors_overlap(route_u.sector, route_v.sector)) continue;
      const bool moved = timed(Neighborhood::kSwapStar, [&] {
        const SwapStarMove move = evaluate_swap_star(route_u.id, route_v.id);
        if (move.delta > -kEpsilon) return false;
        apply_swap_star(move, first_loop);
        return true;
      });
      if (moved) applied = true;
    }
  }
  return applied;
}

void LocalSearch::preprocess_insertions(Route& from, Route& into) {
  const std::size_t stride = static_cast<std::size_t>(instance_->num_customers()) + 1;
  for (Node* u = from.start->next; !u->is_depot; u = u->next) {
    u->removal_delta = d(u->prev, u->next) - d(u->prev, u) - d(u, u->next);
    CachedThreeBest& cached = three_best_[into.id * stride + u->vertex];
    if (into.last_modified > cached.last_calculated) {
      cached.best.reset();
      cached.last_calculated = move_counter_;
      Node* v = into.start;
      do {
        cached.best.add(d(v, u) + d(u, v->next) - d(v, v->next), v->vertex);
        v = v->next;
      } while (!v->is_depot);
    }
  }
}

LocalSearch::Node* LocalSearch::node_after(Route& route, int location) {
  return location == 0 ? route.start : &customers_[location];
}

double LocalSearch::cheapest_insert_without(Node* u, Node* removed, Node*& where) {
  Route& route = *removed->route;
  const std::size_t stride = static_cast<std::size_t>(instance_->num_customers()) + 1;
  const ThreeBest& best = three_best_[route.id * stride + u->vertex].best;
  double cost = ThreeBest::kMissing;
  bool found = false;
  for (int k = 0; k < 3 && best.location[k] >= 0; ++k) {
    Node* after = node_after(route, best.location[k]);
    if (after != removed && after->next != removed) {
      where = after;
      cost = best.cost[k];
      found = true;
      break;
    }
  }
  const double in_place = d(removed->prev, u) + d(u, removed->next) - d(removed->prev, removed->next);
  if (!found || in_place < cost) {
    where = removed->prev;
    cost = in_place;
  }
  return cost;
}

SwapStarMove LocalSearch::evaluate_swap_star(int route_u, int route_v) {
  SwapStarMove best;
  best.route_u = route_u;
  best.route_v = route_v;
  Route& ru = routes_[route_u];
  Route& rv = routes_[route_v];
  if (route_u == route_v || ru.size == 0 || rv.size == 0) return best;
  ++stats_.swap_star_pairs;
  preprocess_insertions(ru, rv);
  preprocess_insertions(rv, ru);
  for (Node* u = ru.start->next; !u->is_depot; u = u->next) {
    for (Node* v = rv.start->next; !v->is_depot; v = v->next) {
      ++stats_.swap_star_evaluations;
      const int shift = demand(v) - demand(u);
      const double penalty_u = excess_penalty(ru.load + shift) - ru.penalty;
      const double penalty_v = excess_penalty(rv.load - shift) - rv.penalty;
      Node* where_u = nullptr;
      Node* where_v = nullptr;
      const double extra_u = cheapest_insert_without(u, v, where_u);
      const double extra_v = cheapest_insert_without(v, u, where_v);
      const double delta = penalty_u + u->removal_delta + extra_u + penalty_v + v->removal_delta + extra_v;
      if (delta < best.delta) {
        best.u = u->vertex;
        best.v = v->vertex;
        best.u_after = where_u->vertex;
        best.v_after = where_v->vertex;
        best.delta = delta;
      }
    }
  }
  return best;
}

void LocalSearch::apply_swap_star(const SwapStarMove& move, bool first_loop) {
  Route& ru = routes_[move.route_u];
  Route& rv = routes_[move.route_v];
  Node* u = &customers_[move.u];
  Node* v = &customers_[move.v];
  Node* where_u = node_after(rv, move.u_after);
  Node* where_v = node_after(ru, move.v_after);
  const double before = begin_move();
  insert_after(u, where_u);
  insert_after(v, where_v);
  end_move(before, move.delta, ru, rv, Neighborhood::kSwapStar, first_loop);
}

bool LocalSearch::swap_star_route_pair(int route_u, int route_v) {
  const SwapStarMove move = evaluate_swap_star(route_u, route_v);
  if (move.delta > -kEpsilon) return false;
  apply_swap_star(move, swap_star_sweeps_ <= 1);
  return true;
}

std::vector<int> LocalSearch::route(int r) const {
  std::vector<int> result;
  const Route& route = routes_[r];
  for (const Node* node = route.start->next; !node->is_depot; node = node->next) result.push_back(node->vertex);
  return result;
}

std::vector<std::vector<int>> LocalSearch::routes() const {
  std::vector<std::vector<int>> result;
  result.reserve(routes_.size());
  for (int r = 0; r < num_routes(); ++r) result.push_back(route(r));
  return result;
}

double LocalSearch::penalized_cost() const {
  double total = 0.0;
  for (const Route& route : routes_) total += route.distance + route.penalty;
  return total;
}

double LocalSearch::recompute_penalized_cost() const {
  double total = 0.0;
  for (const Route& route : routes_) {
    long long load = 0;
    int prev = 0;
    for (const Node* node = route.start->next; !node->is_depot; node = node->next) {
      total += instance_->dist(prev, node->vertex);
      load += instance_->demand(node->vertex);
      prev = node->vertex;
    }
    total += instance_->dist(prev, 0);
    total += excess_penalty(load);
  }
  return total;
}

Individual LocalSearch::export_individual() const {
  std::vector<int> order(routes_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return routes_[a].barycenter_angle < routes_[b].barycenter_angle; });
  std::vector<std::vector<int>> result;
  result.reserve(order.size());
  for (int r : order) result.push_back(route(r));
  return Individual(*instance_, std::move(result));
}

}  // namespace hgs
