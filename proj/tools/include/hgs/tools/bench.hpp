#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "hgs/instance.hpp"
#include "hgs/params.hpp"
#include "hgs/tools/bks.hpp"
#include "hgs/tools/report.hpp"

namespace hgs::tools {

struct BenchConfig {
  std::vector<std::filesystem::path> instances;
  std::vector<std::uint32_t> seeds;
  Params params;
  InstanceOptions instance_options;
  /// Fixed budget; otherwise n * 240 / 100 * time_factor seconds.
  std::optional<double> time_limit;
  double time_factor = 1.0;
  BksTable bks;
  int jobs = 1;
};

/// Called after each finished run (serialized).
using RunCallback = std::function<void(const RunRecord&)>;

/// Runs every (instance, seed) pair, `jobs` at a time, and returns the
/// records in (instance, seed) order. Failures are recorded, not thrown.
std::vector<RunRecord> run_bench(const BenchConfig& config, const RunCallback& on_done = {});

/// Single run with the record filled from the result.
RunRecord run_one(const Instance& instance, const Params& params, const BksTable& bks, double budget_seconds);

}  // namespace hgs::tools
