#pragma once

#include <array>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hgs/genetic.hpp"
#include "hgs/local_search.hpp"

namespace hgs::tools {

/// Fractions of the time budget (in percent) at which the best cost is sampled.
inline constexpr std::array<int, 10> kCheckpointPercents{1, 2, 5, 10, 15, 20, 30, 50, 75, 100};

/// n * 240 / 100 seconds, scaled by `factor`.
double time_budget_seconds(int num_customers, double factor = 1.0);

/// Best cost found no later than each checkpoint; empty where nothing was
/// found yet.
std::vector<std::optional<double>> checkpoint_costs(const std::vector<ConvergencePoint>& convergence,
                                                    double budget_seconds);

struct RunRecord {
  std::string instance;
  std::uint32_t seed = 0;
  bool feasible = false;
  std::optional<double> cost;
  std::optional<long long> bks;
  std::optional<double> gap;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::int64_t iterations = 0;
  int restarts = 0;
  std::vector<ConvergencePoint> convergence;
  std::vector<std::optional<double>> checkpoints;
  LocalSearchStats stats;
  std::string error;
};

struct InstanceSummary {
  std::string instance;
  int runs = 0;
  int feasible_runs = 0;
  std::optional<long long> bks;
  std::optional<double> average_cost;
  std::optional<double> average_gap;
  std::optional<double> best_cost;
  std::optional<double> best_gap;
};

struct GapSummary {
  std::optional<double> min_gap;
  std::optional<double> average_gap;
  std::optional<double> max_gap;
};

/// One entry per instance, in order of first appearance.
std::vector<InstanceSummary> summarize(const std::vector<RunRecord>& records);
/// Min / average / max over the per-instance average gaps.
GapSummary summarize_gaps(const std::vector<InstanceSummary>& summaries);

/// Column order of write_csv.
std::vector<std::string> csv_header();
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
/// Runs (CSV fields plus convergence arrays), per-instance aggregates and the
/// gap summary, pretty-printed.
void write_json(std::ostream& out, const std::vector<RunRecord>& records);

/// Rounded to 4 decimals for display.
std::string format_gap(double gap);

}  // namespace hgs::tools
