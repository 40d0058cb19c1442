#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hgs {

/// Distance rounding convention. The X benchmark set rounds Euclidean
/// distances half-up to the nearest integer.
enum class Rounding { kNearestInteger, kNone };

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Raised for malformed CVRPLIB documents. `line()` is 1-based, 0 when the
/// problem is not attached to a specific line (e.g. a missing section).
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Euclidean distance under the given rounding convention. This is the single
/// place where the convention is applied.
double distance(Point a, Point b, Rounding rounding = Rounding::kNearestInteger);

/// Polar angle of `v` around `depot`, discretized to [0, 65535]. A point
/// coincident with the depot gets angle 0.
int polar_angle(Point depot, Point v);

struct InstanceOptions {
  std::optional<int> fleet_bound;
  int granularity = 20;
  Rounding rounding = Rounding::kNearestInteger;
};

/// Immutable CVRP data. Vertex 0 is the depot, customers are 1..n.
class Instance {
 public:
  /// Builds an instance from raw data; coords[0] and demand[0] describe the
  /// depot. Throws std::invalid_argument on invariant violations.
  Instance(std::string name, std::vector<Point> coords, std::vector<int> demand, int capacity,
           const InstanceOptions& options = {});

  const std::string& name() const noexcept { return name_; }
  int num_customers() const noexcept { return num_customers_; }
  int num_vertices() const noexcept { return num_customers_ + 1; }
  int capacity() const noexcept { return capacity_; }
  int fleet_bound() const noexcept { return fleet_bound_; }
  int granularity() const noexcept { return granularity_; }
  Rounding rounding() const noexcept { return rounding_; }

  /// Fleet size suggested by a trailing `-k<m>` token of the name, if any.
  std::optional<int> vehicle_hint() const noexcept { return vehicle_hint_; }

  Point coord(int v) const { return coords_[v]; }
  int demand(int v) const { return demand_[v]; }
  long long total_demand() const noexcept { return total_demand_; }
  int max_demand() const noexcept { return max_demand_; }

  double dist(int i, int j) const { return dist_[static_cast<std::size_t>(i) * stride_ + j]; }
  const double* dist_row(int i) const { return dist_.data() + static_cast<std::size_t>(i) * stride_; }

  /// Mean of dist(i, j) over ordered pairs i != j of all vertices.
  double average_distance() const noexcept { return average_distance_; }

  std::span<const int> neighbors(int customer) const { return neighbors_[customer]; }
  int polar(int customer) const { return polar_[customer]; }

 private:
  std::string name_;
  int num_customers_ = 0;
  int capacity_ = 0;
  int fleet_bound_ = 0;
  int granularity_ = 0;
  Rounding rounding_ = Rounding::kNearestInteger;
  std::optional<int> vehicle_hint_;
  std::vector<Point> coords_;
  std::vector<int> demand_;
  long long total_demand_ = 0;
  int max_demand_ = 0;
  std::size_t stride_ = 0;
  std::vector<double> dist_;
  double average_distance_ = 0.0;
  std::vector<std::vector<int>> neighbors_;
  std::vector<int> polar_;
};

/// Γ nearest customers of every customer (index 0 left empty), sorted by
/// distance with ties broken by ascending vertex index.
std::vector<std::vector<int>> build_neighbors(const Instance& instance, int granularity);

/// Parses a CVRPLIB (TSPLIB-style) document with EUC_2D coordinates.
Instance parse_instance(std::string_view text, const InstanceOptions& options = {});

/// Reads and parses a file; I/O failures are reported as ParseError(0, ...).
Instance load_instance(const std::filesystem::path& path, const InstanceOptions& options = {});

}  // namespace hgs
