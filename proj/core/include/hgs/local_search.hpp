#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "hgs/circle_sector.hpp"
#include "hgs/individual.hpp"
#include "hgs/instance.hpp"

namespace hgs {

/// Cost of inserting v between i and j: c(i,v) + c(v,j) - c(i,j).
double insertion_delta(const Instance& instance, int v, int i, int j);

/// The three cheapest insertion locations of a vertex into a route, sorted
/// by cost. Missing entries have cost +inf and location -1. Ties keep the
/// location added first.
struct ThreeBest {
  std::array<double, 3> cost{kMissing, kMissing, kMissing};
  std::array<int, 3> location{-1, -1, -1};

  static constexpr double kMissing = std::numeric_limits<double>::infinity();

  void reset();
  void add(double insertion_cost, int where);
};

/// Top-3 insertion positions of v into `route` (v not in the route). Position
/// p is the edge between route[p-1] and route[p], the depot standing in at
/// both ends, so p ranges over 0..route.size().
ThreeBest find_top3(const Instance& instance, int v, std::span<const int> route);

enum class Neighborhood { kRelocate = 0, kSwap, kTwoOpt, kTwoOptStar, kSwapStar };
inline constexpr int kNumNeighborhoods = 5;
const char* neighborhood_name(Neighborhood n);

struct NeighborhoodCounters {
  std::int64_t first_loop_improvements = 0;
  std::int64_t later_improvements = 0;
  std::int64_t time_ns = 0;
};

struct LocalSearchStats {
  std::array<NeighborhoodCounters, kNumNeighborhoods> neighborhoods{};
  std::int64_t descents = 0;
  std::int64_t moves = 0;
  std::int64_t swap_star_pairs = 0;
  std::int64_t swap_star_evaluations = 0;

  // verify_deltas
  std::int64_t delta_checks = 0;
  std::int64_t delta_violations = 0;
  double max_delta_error = 0.0;

  // verify_skips
  std::int64_t skipped_pairs = 0;
  std::int64_t improving_skipped_pairs = 0;

  NeighborhoodCounters& operator[](Neighborhood n) { return neighborhoods[static_cast<int>(n)]; }
  const NeighborhoodCounters& operator[](Neighborhood n) const { return neighborhoods[static_cast<int>(n)]; }
  void merge(const LocalSearchStats& other);
};

struct LocalSearchOptions {
  bool swap_star = true;
  bool sector_filter = true;
  bool collect_timing = false;
  /// Recompute the full penalized cost after every move and compare with the
  /// predicted delta (tolerance 1e-6).
  bool verify_deltas = false;
  /// Evaluate pairs skipped by the time stamps without applying anything and
  /// count the improving ones.
  bool verify_skips = false;
};

/// A SWAP* exchange between two routes. `u` leaves route_u and is inserted
/// after `u_after` in route_v; `v` leaves route_v and is inserted after
/// `v_after` in route_u. A location of 0 is the start depot.
struct SwapStarMove {
  int route_u = -1;
  int route_v = -1;
  int u = 0;
  int v = 0;
  int u_after = 0;
  int v_after = 0;
  double delta = std::numeric_limits<double>::infinity();
};

/// Granular route-improvement descent with the classical moves and SWAP*.
class LocalSearch {
 public:
  LocalSearch(const Instance& instance, std::mt19937& rng, LocalSearchOptions options = {});

  /// Improves `individual` until no move of any enabled neighborhood applies.
  Individual run(const Individual& individual, double penalty);

  /// Lower-level interface, mostly for tests.
  void load(const Individual& individual, double penalty);
  void descend();
  Individual export_individual() const;

  /// One pass of the classical moves over all customers; returns whether a
  /// move was applied.
  bool classical_pass(int pass);
  /// One sweep of SWAP* over the route pairs; returns whether a move was applied.
  bool swap_star_sweep();

  /// Best SWAP* exchange between two nonempty routes, ignoring sectors.
  SwapStarMove evaluate_swap_star(int route_u, int route_v);
  /// Applies the best exchange of the pair if it improves; returns whether it did.
  bool swap_star_route_pair(int route_u, int route_v);

  int num_routes() const noexcept { return static_cast<int>(routes_.size()); }
  std::vector<int> route(int r) const;
  std::vector<std::vector<int>> routes() const;
  const CircleSector& sector(int r) const { return routes_[r].sector; }
  double penalty() const noexcept { return penalty_; }
  /// Monotone clock used for the time stamps; advances with every applied
  /// move and every load.
  long long move_counter() const noexcept { return move_counter_; }
  /// Penalized cost from the maintained route data.
  double penalized_cost() const;
  /// Penalized cost recomputed from scratch.
  double recompute_penalized_cost() const;

  const LocalSearchStats& stats() const noexcept { return stats_; }
  void reset_stats() { stats_ = {}; }
  const LocalSearchOptions& options() const noexcept { return options_; }
  void set_options(const LocalSearchOptions& options) { options_ = options; }

 private:
  struct Route;

  struct Node {
    int vertex = 0;
    bool is_depot = false;
    int position = 0;
    long long cum_load = 0;
    long long last_tested = -1;
    Node* prev = nullptr;
    Node* next = nullptr;
    Route* route = nullptr;
    double removal_delta = 0.0;
  };

  struct Route {
    int id = 0;
    int size = 0;
    long long load = 0;
    double distance = 0.0;
    double penalty = 0.0;
    double barycenter_angle = 0.0;
    long long last_modified = 0;
    long long last_tested_swap_star = -1;
    CircleSector sector;
    Node* start = nullptr;
    Node* end = nullptr;
  };

  struct CachedThreeBest {
    ThreeBest best;
    long long last_calculated = -1;
  };

  double excess_penalty(long long load) const;
  double d(const Node* a, const Node* b) const { return dist_[a->vertex * stride_ + b->vertex]; }
  int demand(const Node* a) const { return instance_->demand(a->vertex); }

  void update_route(Route& route);
  void set_route_sequence(Route& route, const std::vector<Node*>& sequence);
  static void insert_after(Node* u, Node* v);
  static void swap_nodes(Node* u, Node* v);
  Route* first_empty_route();

  void bind(Node* u, Node* v);
  bool try_neighbor(Node* u, Node* v, int pass);
  bool try_empty_route(Node* u, Route& empty, int pass);
  double begin_move() const;
  void end_move(double before, double delta, Route& a, Route& b, Neighborhood family, bool first_loop);
  template <class F>
  bool timed(Neighborhood family, F&& explore);

  bool move_relocate(int pass);
  bool move_relocate_pair(int pass);
  bool move_relocate_pair_reversed(int pass);
  bool move_swap(int pass);
  bool move_swap_pair_single(int pass);
  bool move_swap_pairs(int pass);
  bool move_two_opt(int pass);
  bool move_two_opt_star_reversed(int pass);
  bool move_two_opt_star(int pass);

  void preprocess_insertions(Route& from, Route& into);
  double cheapest_insert_without(Node* u, Node* removed, Node*& where);
  Node* node_after(Route& route, int location);
  void apply_swap_star(const SwapStarMove& move, bool first_loop);

  const Instance* instance_;
  std::mt19937* rng_;
  LocalSearchOptions options_;
  const double* dist_;
  std::size_t stride_;
  double penalty_ = 0.0;
  long long move_counter_ = 0;
  int swap_star_sweeps_ = 0;
  bool dry_run_ = false;
  LocalSearchStats stats_;

  std::vector<Node> customers_;
  std::vector<Node> start_depots_;
  std::vector<Node> end_depots_;
  std::vector<Route> routes_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<int> order_;
  std::vector<int> route_order_;
  std::vector<CachedThreeBest> three_best_;  // [route * (n + 1) + vertex]

  // Operands of the move under evaluation.
  Node* u_ = nullptr;
  Node* x_ = nullptr;
  Node* v_ = nullptr;
  Node* y_ = nullptr;
  Route* route_u_ = nullptr;
  Route* route_v_ = nullptr;
};

}  // namespace hgs
