#include "hgs/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <regex>
#include <sstream>

namespace hgs {

namespace {

std::vector<int> nearest_customers(const std::vector<double>& dist, std::size_t stride, int num_customers,
                                   int customer, int granularity) {
  std::vector<int> candidates;
  candidates.reserve(num_customers - 1);
  for (int j = 1; j <= num_customers; ++j) {
    if (j != customer) candidates.push_back(j);
  }
  const double* row = dist.data() + static_cast<std::size_t>(customer) * stride;
  auto closer = [row](int a, int b) { return row[a] < row[b] || (row[a] == row[b] && a < b); };
  const auto keep = std::min<std::size_t>(granularity, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + keep, candidates.end(), closer);
  candidates.resize(keep);
  return candidates;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_tokens(std::string_view s) {
  std::vector<std::string_view> tokens;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t\r", start);
    if (end == std::string_view::npos) end = s.size();
    tokens.push_back(s.substr(start, end - start));
    pos = end;
  }
  return tokens;
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool is_numeric(std::string_view token) {
  double value = 0.0;
  return parse_number(token, value);
}

enum class Section { kNone, kCoords, kDemand, kDepot, kIgnored };

}  // namespace

ParseError::ParseError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

double distance(Point a, Point b, Rounding rounding) {
  const double d = std::hypot(a.x - b.x, a.y - b.y);
  switch (rounding) {
    case Rounding::kNearestInteger:
      return std::floor(d + 0.5);
    case Rounding::kNone:
      return d;
  }
  return d;
}

int polar_angle(Point depot, Point v) {
  const double dx = v.x - depot.x;
  const double dy = v.y - depot.y;
  if (dx == 0.0 && dy == 0.0) return 0;
  double angle = std::atan2(dy, dx);
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  const int discrete = static_cast<int>(std::floor(angle * 65536.0 / (2.0 * std::numbers::pi)));
  return std::clamp(discrete, 0, 65535);
}

Instance::Instance(std::string name, std::vector<Point> coords, std::vector<int> demand, int capacity,
                   const InstanceOptions& options)
    : name_(std::move(name)),
      capacity_(capacity),
      granularity_(options.granularity),
      rounding_(options.rounding),
      coords_(std::move(coords)),
      demand_(std::move(demand)) {
  if (coords_.size() < 2) throw std::invalid_argument("instance needs a depot and at least one customer");
  if (coords_.size() != demand_.size()) throw std::invalid_argument("coordinate and demand counts differ");
  if (capacity_ <= 0) throw std::invalid_argument("capacity must be positive");
  if (granularity_ < 1) throw std::invalid_argument("granularity must be at least 1");
  num_customers_ = static_cast<int>(coords_.size()) - 1;
  demand_[0] = 0;
  for (int v = 1; v <= num_customers_; ++v) {
    if (demand_[v] < 0) throw std::invalid_argument("negative demand for customer " + std::to_string(v));
    if (demand_[v] > capacity_) {
      throw std::invalid_argument("demand of customer " + std::to_string(v) + " exceeds capacity");
    }
    total_demand_ += demand_[v];
    max_demand_ = std::max(max_demand_, demand_[v]);
  }

  static const std::regex kFleetToken(R"(-k(\d+)\s*$)");
  std::smatch match;
  if (std::regex_search(name_, match, kFleetToken)) vehicle_hint_ = std::stoi(match[1].str());

  if (options.fleet_bound) {
    if (*options.fleet_bound < 1) throw std::invalid_argument("fleet bound must be positive");
    fleet_bound_ = *options.fleet_bound;
  } else {
    fleet_bound_ = static_cast<int>((total_demand_ + capacity_ - 1) / capacity_) + 2;
  }

  stride_ = static_cast<std::size_t>(num_customers_) + 1;
  dist_.assign(stride_ * stride_, 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < stride_; ++i) {
    for (std::size_t j = i + 1; j < stride_; ++j) {
      const double d = distance(coords_[i], coords_[j], rounding_);
      dist_[i * stride_ + j] = d;
      dist_[j * stride_ + i] = d;
      sum += 2.0 * d;
    }
  }
  average_distance_ = sum / static_cast<double>(stride_ * (stride_ - 1));

  neighbors_.resize(stride_);
  for (int i = 1; i <= num_customers_; ++i) {
    neighbors_[i] = nearest_customers(dist_, stride_, num_customers_, i, granularity_);
  }

  polar_.assign(stride_, 0);
  for (int i = 1; i <= num_customers_; ++i) polar_[i] = polar_angle(coords_[0], coords_[i]);
}

std::vector<std::vector<int>> build_neighbors(const Instance& instance, int granularity) {
  if (granularity < 1) throw std::invalid_argument("granularity must be at least 1");
  const int n = instance.num_customers();
  std::vector<double> dist(static_cast<std::size_t>(n + 1) * (n + 1));
  for (int i = 0; i <= n; ++i) {
    std::copy_n(instance.dist_row(i), n + 1, dist.begin() + static_cast<std::ptrdiff_t>(i) * (n + 1));
  }
  std::vector<std::vector<int>> result(n + 1);
  for (int i = 1; i <= n; ++i) result[i] = nearest_customers(dist, n + 1, n, i, granularity);
  return result;
}

Instance parse_instance(std::string_view text, const InstanceOptions& options) {
  std::string name;
  std::optional<int> dimension;
  std::optional<int> capacity;
  bool saw_edge_weight_type = false;

  struct Entry {
    bool seen = false;
    int line = 0;
  };
  std::vector<Point> coords;
  std::vector<Entry> coord_seen;
  std::vector<long long> demands;
  std::vector<Entry> demand_seen;
  std::optional<int> depot_id;

  auto require_dimension = [&](int line) {
    if (!dimension) throw ParseError(line, "section appears before DIMENSION");
    if (coords.empty()) {
      coords.resize(*dimension + 1);
      coord_seen.resize(*dimension + 1);
      demands.assign(*dimension + 1, 0);
      demand_seen.resize(*dimension + 1);
    }
  };

  Section section = Section::kNone;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_number;
    if (line.empty()) continue;

    const auto tokens = split_tokens(line);
    const std::string_view head = tokens.front();

    if (section != Section::kNone && is_numeric(head)) {
      switch (section) {
        case Section::kCoords: {
          int id = 0;
          Point p;
          if (tokens.size() != 3 || !parse_number(tokens[0], id) || !parse_number(tokens[1], p.x) ||
              !parse_number(tokens[2], p.y)) {
            throw ParseError(line_number, "expected '<id> <x> <y>' in NODE_COORD_SECTION");
          }
          if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw ParseError(line_number, "non-finite coordinate");
          if (id < 1 || id > *dimension) throw ParseError(line_number, "vertex id out of range");
          if (coord_seen[id].seen) throw ParseError(line_number, "duplicate vertex id " + std::to_string(id));
          coord_seen[id] = {true, line_number};
          coords[id] = p;
          break;
        }
        case Section::kDemand: {
          int id = 0;
          long long q = 0;
          if (tokens.size() != 2 || !parse_number(tokens[0], id) || !parse_number(tokens[1], q)) {
            throw ParseError(line_number, "expected '<id> <demand>' in DEMAND_SECTION");
          }
          if (id < 1 || id > *dimension) throw ParseError(line_number, "vertex id out of range");
          if (demand_seen[id].seen) throw ParseError(line_number, "duplicate vertex id " + std::to_string(id));
          if (q < 0) throw ParseError(line_number, "negative demand");
          demand_seen[id] = {true, line_number};
          demands[id] = q;
          break;
        }
        case Section::kDepot: {
          int id = 0;
          if (!parse_number(head, id)) throw ParseError(line_number, "invalid depot id");
          if (id == -1) {
            section = Section::kNone;
          } else if (!depot_id) {
            if (id < 1 || id > *dimension) throw ParseError(line_number, "depot id out of range");
            depot_id = id;
          } else {
            throw ParseError(line_number, "multiple depots are not supported");
          }
          break;
        }
        case Section::kIgnored:
        case Section::kNone:
          break;
      }
      continue;
    }

    if (head == "EOF") break;

    // Keyword line: "KEY : VALUE", "KEY: VALUE" or a bare section name.
    std::string_view key = line;
    std::string_view value;
    if (const auto colon = line.find(':'); colon != std::string_view::npos) {
      key = trim(line.substr(0, colon));
      value = trim(line.substr(colon + 1));
    } else if (tokens.size() > 1) {
      key = tokens[0];
      value = trim(line.substr(tokens[1].data() - line.data()));
    }

    section = Section::kNone;
    if (key == "NAME") {
      name = std::string(value);
    } else if (key == "TYPE") {
      if (value != "CVRP") throw ParseError(line_number, "unsupported problem TYPE '" + std::string(value) + "'");
    } else if (key == "DIMENSION") {
      int d = 0;
      if (!parse_number(value, d) || d < 2) throw ParseError(line_number, "invalid DIMENSION");
      dimension = d;
    } else if (key == "CAPACITY") {
      int q = 0;
      if (!parse_number(value, q)) throw ParseError(line_number, "invalid CAPACITY");
      if (q <= 0) throw ParseError(line_number, "CAPACITY must be positive");
      capacity = q;
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (value != "EUC_2D") {
        throw ParseError(line_number, "unsupported EDGE_WEIGHT_TYPE '" + std::string(value) + "'");
      }
      saw_edge_weight_type = true;
    } else if (key == "COMMENT" || key == "DISTANCE" || key == "VEHICLES") {
      // informational
    } else if (key == "NODE_COORD_SECTION") {
      require_dimension(line_number);
      section = Section::kCoords;
    } else if (key == "DEMAND_SECTION") {
      require_dimension(line_number);
      section = Section::kDemand;
    } else if (key == "DEPOT_SECTION") {
      require_dimension(line_number);
      section = Section::kDepot;
    } else if (key.ends_with("_SECTION")) {
      throw ParseError(line_number, "unsupported section " + std::string(key));
    } else {
      throw ParseError(line_number, "unrecognized header line");
    }
  }

  if (!dimension) throw ParseError(0, "missing DIMENSION");
  if (!capacity) throw ParseError(0, "missing CAPACITY");
  if (!saw_edge_weight_type) throw ParseError(0, "missing EDGE_WEIGHT_TYPE");
  if (coords.empty()) throw ParseError(0, "missing NODE_COORD_SECTION");
  for (int id = 1; id <= *dimension; ++id) {
    if (!coord_seen[id].seen) throw ParseError(0, "no coordinates for vertex " + std::to_string(id));
    if (!demand_seen[id].seen) throw ParseError(0, "no demand for vertex " + std::to_string(id));
  }
  if (!depot_id) throw ParseError(0, "missing DEPOT_SECTION entry");

  for (int id = 1; id <= *dimension; ++id) {
    if (id != *depot_id && demands[id] > *capacity) {
      throw ParseError(demand_seen[id].line, "demand " + std::to_string(demands[id]) + " of vertex " +
                                                 std::to_string(id) + " exceeds capacity " +
                                                 std::to_string(*capacity));
    }
  }

  // Depot becomes vertex 0, the remaining ids keep their relative order.
  std::vector<Point> ordered_coords;
  std::vector<int> ordered_demand;
  ordered_coords.reserve(*dimension);
  ordered_demand.reserve(*dimension);
  ordered_coords.push_back(coords[*depot_id]);
  ordered_demand.push_back(0);
  for (int id = 1; id <= *dimension; ++id) {
    if (id == *depot_id) continue;
    ordered_coords.push_back(coords[id]);
    ordered_demand.push_back(static_cast<int>(demands[id]));
  }
  return Instance(name, std::move(ordered_coords), std::move(ordered_demand), *capacity, options);
}

Instance load_instance(const std::filesystem::path& path, const InstanceOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open instance file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str(), options);
}

}  // namespace hgs
