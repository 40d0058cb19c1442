#include "hgs/tools/stats_table.hpp"

#include <cstdio>

namespace hgs::tools {

std::array<NeighborhoodShare, kNumNeighborhoods> neighborhood_shares(const LocalSearchStats& stats) {
  double total_time = 0.0;
  double total_first = 0.0;
  double total_later = 0.0;
  for (const auto& c : stats.neighborhoods) {
    total_time += static_cast<double>(c.time_ns);
    total_first += static_cast<double>(c.first_loop_improvements);
    total_later += static_cast<double>(c.later_improvements);
  }
  auto share = [](double part, double total) { return total > 0.0 ? 100.0 * part / total : 0.0; };
  std::array<NeighborhoodShare, kNumNeighborhoods> result{};
  for (int k = 0; k < kNumNeighborhoods; ++k) {
    const auto& c = stats.neighborhoods[k];
    result[k].neighborhood = static_cast<Neighborhood>(k);
    result[k].time_percent = share(static_cast<double>(c.time_ns), total_time);
    result[k].first_loop_percent = share(static_cast<double>(c.first_loop_improvements), total_first);
    result[k].later_percent = share(static_cast<double>(c.later_improvements), total_later);
  }
  return result;
}

void print_stats_table(std::ostream& out, const LocalSearchStats& stats) {
  char line[160];
  std::snprintf(line, sizeof line, "%-14s %10s %12s %12s %14s %14s\n", "neighborhood", "time_%", "first_loop_%",
                "later_%", "first_loop", "later");
  out << line;
  const auto shares = neighborhood_shares(stats);
  for (int k = 0; k < kNumNeighborhoods; ++k) {
    const auto& c = stats.neighborhoods[k];
    std::snprintf(line, sizeof line, "%-14s %10.2f %12.2f %12.2f %14lld %14lld\n",
                  neighborhood_name(shares[k].neighborhood), shares[k].time_percent, shares[k].first_loop_percent,
                  shares[k].later_percent, static_cast<long long>(c.first_loop_improvements),
                  static_cast<long long>(c.later_improvements));
    out << line;
  }
}

}  // namespace hgs::tools
