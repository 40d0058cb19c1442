#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "generators.hpp"
#include "hgs/tools/bks.hpp"
#include "hgs/tools/cli_args.hpp"
#include "hgs/tools/report.hpp"
#include "hgs/tools/solution_io.hpp"
#include "hgs/tools/stats_table.hpp"
#include "json.hpp"

namespace {

using hgs::Instance;
using hgs::Individual;
namespace tools = hgs::tools;

TEST(SolutionFormat, ToyLayout) {
  const Instance inst("toy", {{0, 0}, {0, 10}, {10, 0}, {10, 10}}, {0, 1, 1, 1}, 2);
  const Individual ind(inst, {{}, {1, 3}, {2}});
  EXPECT_EQ(tools::format_solution(ind, 1.23456), "Route #1: 1 3\nRoute #2: 2\nCost 54\nTime 1.235\n");
}

TEST(SolutionFormat, RoundTrip) {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 40);
    const Instance inst = hgs::testing::random_instance(rng, {.customers = n});
    const Individual ind(inst, hgs::testing::random_cut(rng, hgs::testing::random_tour(rng, n),
                                                        1 + static_cast<int>(rng() % n)));
    const auto parsed = tools::parse_solution(tools::format_solution(ind, 2.5));
    EXPECT_EQ(parsed.routes, ind.routes());
    EXPECT_EQ(parsed.cost, std::llround(ind.total_distance()));
    ASSERT_TRUE(parsed.seconds.has_value());
    EXPECT_DOUBLE_EQ(*parsed.seconds, 2.5);
  }
}

TEST(SolutionFormat, RejectsMalformed) {
  EXPECT_THROW(tools::parse_solution("Route #1: 1 x\nCost 3\n"), std::runtime_error);
  EXPECT_THROW(tools::parse_solution("Route #1: 1 2\n"), std::runtime_error);
  EXPECT_THROW(tools::parse_solution("Garbage\nCost 3\n"), std::runtime_error);
}

TEST(SolutionFormat, StripTimeLine) {
  EXPECT_EQ(tools::strip_time_line("Route #1: 1\nCost 2\nTime 0.500\n"), "Route #1: 1\nCost 2\n");
}

TEST(Bks, ParseAndLookup) {
  const auto table = tools::BksTable::parse("# name value\nX-n101-k25 27591\n\nX-n200-k36 58578  # comment\n");
  EXPECT_EQ(table.size(), 2u);
  EXPECT_EQ(table.find("X-n101-k25"), 27591);
  EXPECT_EQ(table.find("X-n200-k36"), 58578);
  EXPECT_FALSE(table.find("missing").has_value());
}

TEST(Bks, ErrorsNameTheLine) {
  try {
    tools::BksTable::parse("a 1\nb notanumber\n");
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  EXPECT_THROW(tools::BksTable::parse("a -3\n"), std::runtime_error);
}

TEST(Gap, Examples) {
  EXPECT_EQ(tools::gap_percent(27591, 27591), 0.0);
  EXPECT_EQ(tools::format_gap(tools::gap_percent(28000, 27591)), "1.4824");
  EXPECT_NEAR(tools::gap_percent(28000, 27591), 100.0 * 409.0 / 27591.0, 1e-12);
}

TEST(TimeBudget, ScalesWithCustomers) {
  EXPECT_DOUBLE_EQ(tools::time_budget_seconds(1000), 2400.0);
  EXPECT_DOUBLE_EQ(tools::time_budget_seconds(100), 240.0);
  EXPECT_DOUBLE_EQ(tools::time_budget_seconds(100, 0.5), 120.0);
}

TEST(Checkpoints, BestSoFarAtEachFraction) {
  const std::vector<hgs::ConvergencePoint> conv{
      {500'000'000, 120.0}, {3'000'000'000, 110.0}, {40'000'000'000, 105.0}, {90'000'000'000, 101.0}};
  const auto cp = tools::checkpoint_costs(conv, 100.0);
  ASSERT_EQ(cp.size(), tools::kCheckpointPercents.size());
  // 1 s, 2 s, 5 s, 10 s, 15 s, 20 s, 30 s, 50 s, 75 s, 100 s
  EXPECT_EQ(cp[0], 120.0);
  EXPECT_EQ(cp[1], 120.0);
  EXPECT_EQ(cp[2], 110.0);
  EXPECT_EQ(cp[6], 110.0);
  EXPECT_EQ(cp[7], 105.0);
  EXPECT_EQ(cp[8], 105.0);
  EXPECT_EQ(cp[9], 101.0);
  const auto late = tools::checkpoint_costs({{5'000'000'000, 50.0}}, 100.0);
  EXPECT_FALSE(late[0].has_value());
  EXPECT_EQ(late[2], 50.0);
}

std::vector<tools::RunRecord> sample_records() {
  std::vector<tools::RunRecord> records(3);
  records[0].instance = "A";
  records[0].seed = 1;
  records[0].feasible = true;
  records[0].cost = 101.0;
  records[0].bks = 100;
  records[0].gap = 1.0;
  records[1].instance = "A";
  records[1].seed = 2;
  records[1].feasible = true;
  records[1].cost = 103.0;
  records[1].bks = 100;
  records[1].gap = 3.0;
  records[2].instance = "B";
  records[2].seed = 1;
  records[2].error = "no feasible solution";
  return records;
}

TEST(Report, SummariesAndGaps) {
  const auto summaries = tools::summarize(sample_records());
  ASSERT_EQ(summaries.size(), 2u);
  EXPECT_EQ(summaries[0].instance, "A");
  EXPECT_EQ(summaries[0].runs, 2);
  EXPECT_EQ(summaries[0].average_cost, 102.0);
  EXPECT_EQ(summaries[0].average_gap, 2.0);
  EXPECT_EQ(summaries[0].best_cost, 101.0);
  EXPECT_EQ(summaries[0].best_gap, 1.0);
  EXPECT_EQ(summaries[1].feasible_runs, 0);
  EXPECT_FALSE(summaries[1].average_gap.has_value());
  const auto gaps = tools::summarize_gaps(summaries);
  EXPECT_EQ(gaps.min_gap, 2.0);
  EXPECT_EQ(gaps.max_gap, 2.0);
}

TEST(Report, CsvHasHeaderAndOneRowPerRun) {
  std::ostringstream out;
  tools::write_csv(out, sample_records());
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  std::string expected_header;
  for (const auto& col : tools::csv_header()) expected_header += (expected_header.empty() ? "" : ",") + col;
  EXPECT_EQ(line, expected_header);
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 3);
}

TEST(Report, JsonIsWellFormed) {
  std::ostringstream out;
  tools::write_json(out, sample_records());
  const auto doc = nlohmann::json::parse(out.str());
  ASSERT_TRUE(doc.contains("runs"));
  EXPECT_EQ(doc["runs"].size(), 3u);
  ASSERT_TRUE(doc.contains("instances"));
  EXPECT_EQ(doc["instances"].size(), 2u);
}

TEST(NormalizeArgs, SingleDashLongFlags) {
  const std::vector<std::string> in{"solve", "x.vrp", "-seed", "3", "-it=50", "-noSwapStar", "-t", "5", "--veh", "4"};
  const std::vector<std::string> expected{"solve", "x.vrp", "--seed", "3", "--it=50", "--noSwapStar", "-t", "5",
                                          "--veh", "4"};
  EXPECT_EQ(tools::normalize_args(in), expected);
}

TEST(StatsTable, SharesSumToHundred) {
  hgs::LocalSearchStats stats;
  std::mt19937 rng(5);
  for (auto& c : stats.neighborhoods) {
    c.first_loop_improvements = rng() % 1000;
    c.later_improvements = rng() % 1000;
    c.time_ns = rng() % 100000;
  }
  const auto shares = tools::neighborhood_shares(stats);
  double time = 0.0;
  double first = 0.0;
  double later = 0.0;
  for (const auto& s : shares) {
    time += s.time_percent;
    first += s.first_loop_percent;
    later += s.later_percent;
  }
  EXPECT_NEAR(time, 100.0, 1e-9);
  EXPECT_NEAR(first, 100.0, 1e-9);
  EXPECT_NEAR(later, 100.0, 1e-9);
}

TEST(StatsTable, ZeroTotalsGiveZeroShares) {
  const auto shares = tools::neighborhood_shares(hgs::LocalSearchStats{});
  for (const auto& s : shares) {
    EXPECT_EQ(s.time_percent, 0.0);
    EXPECT_EQ(s.first_loop_percent, 0.0);
  }
  std::ostringstream out;
  tools::print_stats_table(out, hgs::LocalSearchStats{});
  EXPECT_NE(out.str().find("swap_star"), std::string::npos);
}

}  // namespace
