#pragma once

#include <array>
#include <ostream>

#include "hgs/local_search.hpp"

namespace hgs::tools {

struct NeighborhoodShare {
  Neighborhood neighborhood = Neighborhood::kRelocate;
  double time_percent = 0.0;
  double first_loop_percent = 0.0;
  double later_percent = 0.0;
};

/// Shares of total time, of first-loop improvements and of later
/// improvements; each column sums to 100 unless its total is zero.
std::array<NeighborhoodShare, kNumNeighborhoods> neighborhood_shares(const LocalSearchStats& stats);

void print_stats_table(std::ostream& out, const LocalSearchStats& stats);

}  // namespace hgs::tools
