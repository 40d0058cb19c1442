#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "hgs/tools/solution_io.hpp"

namespace {

namespace fs = std::filesystem;

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

CommandResult run_cli(const std::string& args) {
  const std::string command = std::string(HGS_CLI_PATH) + " " + args + " 2>/dev/null";
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buffer{};
  std::size_t read = 0;
  while ((read = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0) result.out.append(buffer.data(), read);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hgs_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
    toy_ = write("toy.vrp", hgs::testing::cvrplib_text("toy", {{0, 0}, {0, 10}, {10, 0}, {10, 10}}, {0, 1, 1, 1}, 2));
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  fs::path dir_;
  std::string toy_;
};

TEST_F(Cli, ToySolutionFileFormat) {
  const std::string sol = (dir_ / "toy.sol").string();
  const auto r = run_cli("solve " + toy_ + " " + sol + " -seed 1 -it 200");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("toy cost=54 routes=2 feasible=1"), std::string::npos) << r.out;
  const auto parsed = hgs::tools::parse_solution(read_file(sol));
  EXPECT_LE(static_cast<int>(parsed.routes.size()), hgs::load_instance(toy_).fleet_bound());
  std::multiset<int> seen;
  for (const auto& route : parsed.routes) seen.insert(route.begin(), route.end());
  EXPECT_EQ(seen, (std::multiset<int>{1, 2, 3}));
  EXPECT_EQ(parsed.cost, 54);
}

TEST_F(Cli, SolutionPrintedWithoutOutputPath) {
  const auto r = run_cli("solve " + toy_ + " --it 50");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("Route #1:"), std::string::npos);
  EXPECT_NE(r.out.find("Cost 54"), std::string::npos);
}

TEST_F(Cli, SameSeedGivesIdenticalFilesExceptTime) {
  const std::string a = (dir_ / "a.sol").string();
  const std::string b = (dir_ / "b.sol").string();
  const std::string inst = std::string(HGS_TEST_DATA_DIR) + "/E-n22-k4.vrp";
  const auto ra = run_cli("solve " + inst + " " + a + " -seed 7 -it 1000");
  const auto rb = run_cli("solve " + inst + " " + b + " -seed 7 -it 1000");
  ASSERT_EQ(ra.exit_code, 0);
  ASSERT_EQ(rb.exit_code, 0);
  EXPECT_EQ(hgs::tools::strip_time_line(read_file(a)), hgs::tools::strip_time_line(read_file(b)));
  const std::regex iterations("iterations=(\\d+)");
  std::smatch ma;
  std::smatch mb;
  ASSERT_TRUE(std::regex_search(ra.out, ma, iterations));
  ASSERT_TRUE(std::regex_search(rb.out, mb, iterations));
  EXPECT_EQ(ma[1], mb[1]);
}

TEST_F(Cli, CostLineMatchesSummary) {
  const std::string sol = (dir_ / "e22.sol").string();
  const auto r = run_cli("solve " + std::string(HGS_TEST_DATA_DIR) + "/E-n22-k4.vrp " + sol + " -it 500");
  ASSERT_EQ(r.exit_code, 0);
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.out, m, std::regex("cost=(\\d+)")));
  EXPECT_EQ(hgs::tools::parse_solution(read_file(sol)).cost, std::stoll(m[1]));
}

TEST_F(Cli, MissingInstanceIsInputError) {
  EXPECT_EQ(run_cli("solve " + (dir_ / "absent.vrp").string()).exit_code, 1);
}

TEST_F(Cli, MalformedInstanceIsInputError) {
  const std::string bad = write("bad.vrp", "NAME : bad\nDIMENSION : 2\nCAPACITY : -1\nEOF\n");
  EXPECT_EQ(run_cli("solve " + bad).exit_code, 1);
}

TEST_F(Cli, UnknownFlagIsInputError) { EXPECT_EQ(run_cli("solve " + toy_ + " --bogus").exit_code, 1); }

TEST_F(Cli, NoFeasibleSolutionHasDistinctExitCode) {
  const auto r = run_cli("solve " + toy_ + " -veh 1 -it 50");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.out.find("feasible=0"), std::string::npos);
}

TEST_F(Cli, StatsWithoutSwapStarHasZeroRow) {
  const auto r = run_cli("stats " + std::string(HGS_TEST_DATA_DIR) + "/E-n22-k4.vrp -it 300 -noSwapStar");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_TRUE(std::regex_search(r.out, std::regex("swap_star\\s+0\\.00\\s+0\\.00\\s+0\\.00\\s+0\\s+0\\n"))) << r.out;
}

TEST_F(Cli, StatsSwapStarShareOnClusteredInstance) {
  std::mt19937 rng(200);
  const hgs::Instance inst =
      hgs::testing::random_instance(rng, {.customers = 200, .capacity_factor = 12.0, .clustered = true});
  std::vector<hgs::Point> coords;
  std::vector<int> demand;
  for (int v = 0; v <= 200; ++v) {
    coords.push_back(inst.coord(v));
    demand.push_back(inst.demand(v));
  }
  const std::string path = write("clustered.vrp", hgs::testing::cvrplib_text("clustered", coords, demand,
                                                                             inst.capacity()));
  const auto r = run_cli("stats " + path + " -it 200");
  ASSERT_EQ(r.exit_code, 0);
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.out, m, std::regex("swap_star\\s+([0-9.]+)"))) << r.out;
  const double share = std::stod(m[1]);
  EXPECT_GT(share, 0.0);
  EXPECT_LE(share, 60.0);
}

TEST_F(Cli, BenchWritesReports) {
  const std::string bks = write("bks.txt", "toy 54\n");
  const std::string csv = (dir_ / "r.csv").string();
  const std::string json = (dir_ / "r.json").string();
  const auto r = run_cli("bench " + toy_ + " --seeds 1,2 --it 50 -t 0.2 --bks " + bks + " --csv " + csv +
                         " --json " + json);
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("Avg gap 0.0000"), std::string::npos) << r.out;
  std::ifstream in(csv);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 3);
  EXPECT_TRUE(fs::exists(json));
}

}  // namespace
