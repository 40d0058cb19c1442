#include "hgs/tools/cli_args.hpp"

#include <algorithm>
#include <array>
#include <string_view>

namespace hgs::tools {

namespace {

constexpr std::array<std::string_view, 8> kLongFlags{"seed", "it", "veh", "round", "noSwapStar", "log", "jobs", "bks"};

}  // namespace

std::vector<std::string> normalize_args(const std::vector<std::string>& args) {
  std::vector<std::string> result;
  result.reserve(args.size());
  for (const auto& arg : args) {
    if (arg.size() > 2 && arg[0] == '-' && arg[1] != '-') {
      const std::string_view body = std::string_view(arg).substr(1, arg.find('=') == std::string::npos
                                                                          ? std::string_view::npos
                                                                          : arg.find('=') - 1);
      if (std::find(kLongFlags.begin(), kLongFlags.end(), body) != kLongFlags.end()) {
        result.push_back("-" + arg);
        continue;
      }
    }
    result.push_back(arg);
  }
  return result;
}

}  // namespace hgs::tools
