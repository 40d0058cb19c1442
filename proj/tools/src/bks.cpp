#include "hgs/tools/bks.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hgs::tools {

BksTable BksTable::parse(std::string_view text) {
  BksTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name)) continue;
    double value = 0.0;
    std::string extra;
    if (!(fields >> value) || (fields >> extra) || value <= 0.0) {
      throw std::runtime_error("BKS line " + std::to_string(number) + ": expected '<name> <positive value>'");
    }
    table.set(name, static_cast<long long>(value));
  }
  return table;
}

BksTable BksTable::load(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot read " + path.string());
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse(buffer.str());
}

void BksTable::set(const std::string& name, long long value) { values_[name] = value; }

std::optional<long long> BksTable::find(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

double gap_percent(double cost, double bks) { return 100.0 * (cost - bks) / bks; }

}  // namespace hgs::tools
