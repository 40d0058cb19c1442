#include "hgs/tools/solution_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace hgs::tools {

std::string format_solution(const Individual& individual, double seconds) {
  std::ostringstream out;
  int k = 0;
  for (const auto& route : individual.routes()) {
    if (route.empty()) continue;
    out << "Route #" << ++k << ':';
    for (int v : route) out << ' ' << v;
    out << '\n';
  }
  out << "Cost " << std::llround(individual.total_distance()) << '\n';
  out << "Time " << std::fixed << std::setprecision(3) << seconds << '\n';
  return out.str();
}

void write_solution(const std::filesystem::path& path, const Individual& individual, double seconds) {
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path.string());
  file << format_solution(individual, seconds);
  if (!file) throw std::runtime_error("write failed: " + path.string());
}

ParsedSolution parse_solution(std::string_view text) {
  ParsedSolution result;
  bool have_cost = false;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;
    auto fail = [&](const std::string& what) {
      throw std::runtime_error("solution line " + std::to_string(number) + ": " + what);
    };
    if (keyword == "Route") {
      std::string label;
      fields >> label;
      if (label.size() < 3 || label.front() != '#' || label.back() != ':') fail("expected 'Route #k:'");
      std::vector<int> route;
      int v = 0;
      while (fields >> v) route.push_back(v);
      if (!fields.eof()) fail("non-integer customer");
      if (route.empty()) fail("empty route");
      result.routes.push_back(std::move(route));
    } else if (keyword == "Cost") {
      if (!(fields >> result.cost)) fail("bad cost");
      have_cost = true;
    } else if (keyword == "Time") {
      double seconds = 0.0;
      if (!(fields >> seconds)) fail("bad time");
      result.seconds = seconds;
    } else {
      fail("unexpected '" + keyword + "'");
    }
  }
  if (!have_cost) throw std::runtime_error("solution has no Cost line");
  return result;
}

std::string strip_time_line(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("Time", 0) == 0) continue;
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace hgs::tools
