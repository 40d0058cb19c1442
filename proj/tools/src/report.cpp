#include "hgs/tools/report.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <map>
#include <sstream>

#include "hgs/tools/bks.hpp"
#include "json.hpp"

namespace hgs::tools {

namespace {

using nlohmann::json;

template <class T>
json optional_json(const std::optional<T>& value) {
  return value ? json(*value) : json(nullptr);
}

template <class T>
std::string optional_csv(const std::optional<T>& value) {
  if (!value) return "";
  std::ostringstream out;
  out << std::setprecision(12) << *value;
  return out.str();
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

double time_budget_seconds(int num_customers, double factor) { return num_customers * 240.0 / 100.0 * factor; }

std::vector<std::optional<double>> checkpoint_costs(const std::vector<ConvergencePoint>& convergence,
                                                    double budget_seconds) {
  std::vector<std::optional<double>> result;
  result.reserve(kCheckpointPercents.size());
  for (int percent : kCheckpointPercents) {
    const double limit_ns = budget_seconds * 1e9 * percent / 100.0;
    std::optional<double> best;
    for (const auto& point : convergence) {
      if (static_cast<double>(point.elapsed_ns) > limit_ns) break;
      if (!best || point.cost < *best) best = point.cost;
    }
    result.push_back(best);
  }
  return result;
}

std::vector<InstanceSummary> summarize(const std::vector<RunRecord>& records) {
  std::vector<InstanceSummary> summaries;
  std::map<std::string, std::size_t> index;
  std::map<std::string, std::pair<double, double>> sums;  // cost, gap
  std::map<std::string, int> gap_count;
  for (const auto& r : records) {
    auto [it, inserted] = index.try_emplace(r.instance, summaries.size());
    if (inserted) {
      summaries.push_back({});
      summaries.back().instance = r.instance;
    }
    InstanceSummary& s = summaries[it->second];
    ++s.runs;
    if (r.bks) s.bks = r.bks;
    if (!r.cost || !r.feasible) continue;
    ++s.feasible_runs;
    sums[r.instance].first += *r.cost;
    if (!s.best_cost || *r.cost < *s.best_cost) s.best_cost = r.cost;
    if (r.gap) {
      sums[r.instance].second += *r.gap;
      ++gap_count[r.instance];
    }
  }
  for (auto& s : summaries) {
    if (s.feasible_runs == 0) continue;
    s.average_cost = sums[s.instance].first / s.feasible_runs;
    if (s.bks) {
      if (gap_count[s.instance] == s.runs) s.average_gap = sums[s.instance].second / s.runs;
      s.best_gap = gap_percent(*s.best_cost, static_cast<double>(*s.bks));
    }
  }
  return summaries;
}

GapSummary summarize_gaps(const std::vector<InstanceSummary>& summaries) {
  GapSummary result;
  double total = 0.0;
  int count = 0;
  for (const auto& s : summaries) {
    if (!s.average_gap) continue;
    const double g = *s.average_gap;
    if (!result.min_gap || g < *result.min_gap) result.min_gap = g;
    if (!result.max_gap || g > *result.max_gap) result.max_gap = g;
    total += g;
    ++count;
  }
  if (count > 0) result.average_gap = total / count;
  return result;
}

std::vector<std::string> csv_header() {
  std::vector<std::string> header{"instance", "seed",       "feasible", "cost",     "bks",
                                  "gap_pct",  "time_s",     "budget_s", "iterations", "restarts"};
  for (int percent : kCheckpointPercents) header.push_back("best_at_" + std::to_string(percent) + "pct");
  header.push_back("error");
  return header;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  const auto header = csv_header();
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& r : records) {
    out << csv_escape(r.instance) << ',' << r.seed << ',' << (r.feasible ? 1 : 0) << ',' << optional_csv(r.cost) << ','
        << optional_csv(r.bks) << ',' << (r.gap ? format_gap(*r.gap) : "") << ',' << std::fixed
        << std::setprecision(3) << r.seconds << ',' << r.budget_seconds << std::defaultfloat << ',' << r.iterations
        << ',' << r.restarts;
    for (std::size_t k = 0; k < kCheckpointPercents.size(); ++k) {
      out << ',' << (k < r.checkpoints.size() ? optional_csv(r.checkpoints[k]) : "");
    }
    out << ',' << csv_escape(r.error) << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<RunRecord>& records) {
  json runs = json::array();
  for (const auto& r : records) {
    json convergence = json::array();
    for (const auto& p : r.convergence) convergence.push_back({{"elapsed_s", p.elapsed_ns * 1e-9}, {"cost", p.cost}});
    json checkpoints = json::array();
    for (std::size_t k = 0; k < kCheckpointPercents.size() && k < r.checkpoints.size(); ++k) {
      checkpoints.push_back({{"percent", kCheckpointPercents[k]}, {"cost", optional_json(r.checkpoints[k])}});
    }
    json neighborhoods = json::object();
    for (int k = 0; k < kNumNeighborhoods; ++k) {
      const auto& c = r.stats.neighborhoods[k];
      neighborhoods[neighborhood_name(static_cast<Neighborhood>(k))] = {
          {"first_loop_improvements", c.first_loop_improvements},
          {"later_improvements", c.later_improvements},
          {"time_ns", c.time_ns}};
    }
    runs.push_back({{"instance", r.instance},
                    {"seed", r.seed},
                    {"feasible", r.feasible},
                    {"cost", optional_json(r.cost)},
                    {"bks", optional_json(r.bks)},
                    {"gap_pct", optional_json(r.gap)},
                    {"time_s", r.seconds},
                    {"budget_s", r.budget_seconds},
                    {"iterations", r.iterations},
                    {"restarts", r.restarts},
                    {"checkpoints", checkpoints},
                    {"convergence", convergence},
                    {"neighborhoods", neighborhoods},
                    {"error", r.error}});
  }

  const auto summaries = summarize(records);
  json instances = json::array();
  for (const auto& s : summaries) {
    instances.push_back({{"instance", s.instance},
                         {"runs", s.runs},
                         {"feasible_runs", s.feasible_runs},
                         {"bks", optional_json(s.bks)},
                         {"avg_cost", optional_json(s.average_cost)},
                         {"avg_gap_pct", optional_json(s.average_gap)},
                         {"best_cost", optional_json(s.best_cost)},
                         {"best_gap_pct", optional_json(s.best_gap)}});
  }
  const GapSummary gaps = summarize_gaps(summaries);
  json document = {{"runs", runs},
                   {"instances", instances},
                   {"summary",
                    {{"min_gap_pct", optional_json(gaps.min_gap)},
                     {"avg_gap_pct", optional_json(gaps.average_gap)},
                     {"max_gap_pct", optional_json(gaps.max_gap)}}}};
  out << document.dump(2) << '\n';
}

std::string format_gap(double gap) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.4f", gap);
  return buffer;
}

}  // namespace hgs::tools
