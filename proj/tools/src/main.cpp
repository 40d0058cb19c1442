#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hgs/genetic.hpp"
#include "hgs/instance.hpp"
#include "hgs/tools/bench.hpp"
#include "hgs/tools/bks.hpp"
#include "hgs/tools/cli_args.hpp"
#include "hgs/tools/report.hpp"
#include "hgs/tools/solution_io.hpp"
#include "hgs/tools/stats_table.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitNoFeasible = 2;

struct SearchFlags {
  std::uint32_t seed = 1;
  int iterations = 20000;
  std::optional<double> time_limit;
  std::optional<int> vehicles;
  hgs::Rounding rounding = hgs::Rounding::kNearestInteger;
  int granularity = 20;
  bool no_swap_star = false;
  bool verify = false;
};

void add_search_flags(CLI::App& cmd, SearchFlags& flags, bool with_seed, bool with_time) {
  if (with_seed) cmd.add_option("--seed", flags.seed, "Random seed")->capture_default_str();
  cmd.add_option("--it", flags.iterations, "Iterations without improvement before stopping or restarting")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  if (with_time) cmd.add_option("-t,--time", flags.time_limit, "Time limit in seconds")->check(CLI::PositiveNumber);
  cmd.add_option("--veh", flags.vehicles, "Fleet bound")->check(CLI::PositiveNumber);
  const std::map<std::string, hgs::Rounding> roundings{{"nearest", hgs::Rounding::kNearestInteger},
                                                       {"none", hgs::Rounding::kNone}};
  cmd.add_option("--round", flags.rounding, "Distance rounding: nearest or none")
      ->transform(CLI::CheckedTransformer(roundings, CLI::ignore_case));
  cmd.add_option("--granularity", flags.granularity, "Neighbors per customer")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd.add_flag("--noSwapStar", flags.no_swap_star, "Disable the SWAP* neighborhood");
  cmd.add_flag("--verify", flags.verify, "Check every move delta against a full re-evaluation");
}

hgs::InstanceOptions instance_options(const SearchFlags& flags) {
  hgs::InstanceOptions options;
  options.fleet_bound = flags.vehicles;
  options.granularity = flags.granularity;
  options.rounding = flags.rounding;
  return options;
}

hgs::Params search_params(const SearchFlags& flags) {
  hgs::Params params;
  params.seed = flags.seed;
  params.max_iterations_without_improvement = flags.iterations;
  params.time_limit = flags.time_limit;
  params.local_search.swap_star = !flags.no_swap_star;
  params.local_search.verify_deltas = flags.verify;
  return params;
}

void print_summary(const hgs::Instance& instance, const hgs::RunResult& result, std::uint32_t seed) {
  const hgs::Individual& shown = result.best ? *result.best : *result.best_infeasible;
  std::printf("%s cost=%lld routes=%d feasible=%d time=%.3f iterations=%lld restarts=%d seed=%u\n",
              instance.name().c_str(), static_cast<long long>(std::llround(shown.total_distance())),
              shown.num_nonempty_routes(), result.feasible() ? 1 : 0, static_cast<double>(result.elapsed_ns) * 1e-9,
              static_cast<long long>(result.iterations), result.restarts, seed);
}

void write_convergence_log(const std::string& path, const hgs::RunResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "elapsed_s,cost\n";
  for (const auto& p : result.convergence) out << static_cast<double>(p.elapsed_ns) * 1e-9 << ',' << p.cost << '\n';
}

int cmd_solve(const std::string& instance_path, const std::string& output, const std::string& log_path,
              const SearchFlags& flags, bool stats) {
  const hgs::Instance instance = hgs::load_instance(instance_path, instance_options(flags));
  hgs::Params params = search_params(flags);
  params.local_search.collect_timing = stats;
  const hgs::RunResult result = hgs::solve(instance, params);
  if (!result.best && !result.best_infeasible) {
    std::fprintf(stderr, "error: no solution produced\n");
    return kExitNoFeasible;
  }
  print_summary(instance, result, flags.seed);
  if (!log_path.empty()) write_convergence_log(log_path, result);
  if (stats) hgs::tools::print_stats_table(std::cout, result.local_search);
  if (!result.feasible()) {
    std::fprintf(stderr, "error: no feasible solution found\n");
    return kExitNoFeasible;
  }
  const double seconds = static_cast<double>(result.elapsed_ns) * 1e-9;
  if (!output.empty()) {
    hgs::tools::write_solution(output, *result.best, seconds);
  } else if (!stats) {
    std::cout << hgs::tools::format_solution(*result.best, seconds);
  }
  return kExitOk;
}

int cmd_bench(const std::vector<std::string>& instances, std::vector<std::uint32_t> seeds, int runs,
              const std::string& bks_path, double time_factor, int jobs, const std::string& csv_path,
              const std::string& json_path, const SearchFlags& flags) {
  hgs::tools::BenchConfig config;
  for (const auto& path : instances) config.instances.emplace_back(path);
  if (seeds.empty()) {
    for (int s = 1; s <= runs; ++s) seeds.push_back(static_cast<std::uint32_t>(s));
  }
  config.seeds = seeds;
  config.params = search_params(flags);
  config.instance_options = instance_options(flags);
  config.time_limit = flags.time_limit;
  config.time_factor = time_factor;
  config.jobs = jobs;
  if (!bks_path.empty()) config.bks = hgs::tools::BksTable::load(bks_path);

  const auto records = hgs::tools::run_bench(config, [](const hgs::tools::RunRecord& r) {
    if (r.cost) {
      std::fprintf(stderr, "%s seed=%u cost=%.0f gap=%s time=%.1f\n", r.instance.c_str(), r.seed, *r.cost,
                   r.gap ? hgs::tools::format_gap(*r.gap).c_str() : "-", r.seconds);
    } else {
      std::fprintf(stderr, "%s seed=%u failed: %s\n", r.instance.c_str(), r.seed, r.error.c_str());
    }
  });

  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path);
    hgs::tools::write_csv(out, records);
  }
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) throw std::runtime_error("cannot write " + json_path);
    hgs::tools::write_json(out, records);
  }

  const auto summaries = hgs::tools::summarize(records);
  auto fmt = [](const std::optional<double>& v, bool gap) {
    if (!v) return std::string("-");
    return gap ? hgs::tools::format_gap(*v) : std::to_string(*v);
  };
  std::printf("%-24s %6s %14s %10s %12s %10s\n", "instance", "runs", "avg_cost", "avg_gap", "best_cost", "best_gap");
  for (const auto& s : summaries) {
    std::printf("%-24s %6d %14s %10s %12s %10s\n", s.instance.c_str(), s.runs, fmt(s.average_cost, false).c_str(),
                fmt(s.average_gap, true).c_str(), fmt(s.best_cost, false).c_str(), fmt(s.best_gap, true).c_str());
  }
  const auto gaps = hgs::tools::summarize_gaps(summaries);
  std::printf("Min gap %s  Avg gap %s  Max gap %s\n", fmt(gaps.min_gap, true).c_str(),
              fmt(gaps.average_gap, true).c_str(), fmt(gaps.max_gap, true).c_str());

  const bool all_failed = std::all_of(records.begin(), records.end(), [](const auto& r) { return !r.cost; });
  return records.empty() || !all_failed ? kExitOk : kExitInputError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid genetic search for the capacitated vehicle routing problem"};
  app.require_subcommand(1);

  SearchFlags solve_flags;
  std::string solve_instance;
  std::string solve_output;
  std::string solve_log;
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("instance", solve_instance, "CVRPLIB instance file")->required()->check(CLI::ExistingFile);
  solve->add_option("solution", solve_output, "Output solution file (printed when omitted)");
  solve->add_option("--log", solve_log, "Write the convergence log (CSV) to this file");
  add_search_flags(*solve, solve_flags, true, true);

  SearchFlags stats_flags;
  std::string stats_instance;
  std::string stats_log;
  auto* stats = app.add_subcommand("stats", "Solve one instance and report per-neighborhood statistics");
  stats->add_option("instance", stats_instance, "CVRPLIB instance file")->required()->check(CLI::ExistingFile);
  stats->add_option("--log", stats_log, "Write the convergence log (CSV) to this file");
  add_search_flags(*stats, stats_flags, true, true);

  SearchFlags bench_flags;
  std::vector<std::string> bench_instances;
  std::vector<std::uint32_t> bench_seeds;
  int bench_runs = 10;
  std::string bench_bks;
  double bench_time_factor = 1.0;
  int bench_jobs = 1;
  std::string bench_csv;
  std::string bench_json;
  auto* bench = app.add_subcommand("bench", "Seeded runs over several instances with gap reporting");
  bench->add_option("instances", bench_instances, "CVRPLIB instance files")->required()->check(CLI::ExistingFile);
  bench->add_option("--seeds", bench_seeds, "Seeds (default 1..runs)")->delimiter(',');
  bench->add_option("--runs", bench_runs, "Number of seeds when --seeds is absent")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--bks", bench_bks, "Best known solutions file")->check(CLI::ExistingFile);
  bench->add_option("--time-factor", bench_time_factor, "Scale of the n*240/100 s budget")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  bench->add_option("--jobs", bench_jobs, "Concurrent runs")->capture_default_str()->check(CLI::PositiveNumber);
  bench->add_option("--csv", bench_csv, "Per-run CSV report");
  bench->add_option("--json", bench_json, "JSON report");
  add_search_flags(*bench, bench_flags, false, true);

  std::vector<std::string> args(argv + 1, argv + argc);
  args = hgs::tools::normalize_args(args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (*solve) return cmd_solve(solve_instance, solve_output, solve_log, solve_flags, false);
    if (*stats) return cmd_solve(stats_instance, "", stats_log, stats_flags, true);
    if (*bench) {
      return cmd_bench(bench_instances, bench_seeds, bench_runs, bench_bks, bench_time_factor, bench_jobs, bench_csv,
                       bench_json, bench_flags);
    }
  } catch (const hgs::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInputError;
  }
  return kExitOk;
}
