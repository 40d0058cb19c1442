#pragma once

#include <string>
#include <vector>

namespace hgs::tools {

/// Rewrites the single-dash long flags (-seed, -it, -veh, -round,
/// -noSwapStar, -log, -jobs, -bks) to their double-dash form; other tokens
/// pass through unchanged.
std::vector<std::string> normalize_args(const std::vector<std::string>& args);

}  // namespace hgs::tools
