#include "hgs/tools/bench.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <memory>
#include <mutex>
#include <thread>

namespace hgs::tools {

RunRecord run_one(const Instance& instance, const Params& params, const BksTable& bks, double budget_seconds) {
  RunRecord record;
  record.instance = instance.name();
  record.seed = params.seed;
  record.bks = bks.find(instance.name());
  record.budget_seconds = budget_seconds;

  const RunResult result = solve(instance, params);
  record.feasible = result.feasible();
  record.seconds = static_cast<double>(result.elapsed_ns) * 1e-9;
  record.iterations = result.iterations;
  record.restarts = result.restarts;
  record.convergence = result.convergence;
  record.checkpoints = checkpoint_costs(result.convergence, budget_seconds);
  record.stats = result.local_search;
  if (result.best) {
    record.cost = result.best->total_distance();
    if (record.bks) record.gap = gap_percent(*record.cost, static_cast<double>(*record.bks));
  } else {
    record.error = "no feasible solution";
  }
  return record;
}

std::vector<RunRecord> run_bench(const BenchConfig& config, const RunCallback& on_done) {
  struct Job {
    std::size_t instance;
    std::uint32_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    for (std::uint32_t seed : config.seeds) jobs.push_back({i, seed});
  }

  std::vector<std::shared_ptr<const Instance>> instances(config.instances.size());
  std::vector<std::string> load_errors(config.instances.size());
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    try {
      instances[i] = std::make_shared<const Instance>(load_instance(config.instances[i], config.instance_options));
    } catch (const std::exception& e) {
      load_errors[i] = e.what();
    }
  }

  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex report_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      const Job& job = jobs[k];
      RunRecord record;
      if (!instances[job.instance]) {
        record.instance = config.instances[job.instance].stem().string();
        record.seed = job.seed;
        record.error = load_errors[job.instance];
      } else {
        const Instance& instance = *instances[job.instance];
        Params params = config.params;
        params.seed = job.seed;
        const double budget = config.time_limit.value_or(time_budget_seconds(instance.num_customers(), config.time_factor));
        params.time_limit = budget;
        try {
          record = run_one(instance, params, config.bks, budget);
        } catch (const std::exception& e) {
          record.instance = instance.name();
          record.seed = job.seed;
          record.error = e.what();
        }
      }
      std::lock_guard lock(report_mutex);
      records[k] = std::move(record);
      if (on_done) on_done(records[k]);
    }
  };

  const int threads = std::clamp<int>(config.jobs, 1, std::max<int>(1, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return records;
}

}  // namespace hgs::tools
