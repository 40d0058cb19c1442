#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hgs/individual.hpp"

namespace hgs::tools {

/// "Route #k: v1 v2 ..." for every nonempty route, then "Cost <int>" and
/// "Time <seconds>" with three decimals.
std::string format_solution(const Individual& individual, double seconds);

void write_solution(const std::filesystem::path& path, const Individual& individual, double seconds);

struct ParsedSolution {
  std::vector<std::vector<int>> routes;
  long long cost = 0;
  std::optional<double> seconds;
};

/// Inverse of format_solution. Throws std::runtime_error on malformed input.
ParsedSolution parse_solution(std::string_view text);

/// Drops the Time line, for comparing solution files of identical runs.
std::string strip_time_line(std::string_view text);

}  // namespace hgs::tools
