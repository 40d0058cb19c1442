#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace hgs::tools {

/// Best known solution values keyed by instance name.
class BksTable {
 public:
  BksTable() = default;

  /// "name value" per line; '#' starts a comment. Throws std::runtime_error
  /// naming the line for malformed rows or nonpositive values.
  static BksTable parse(std::string_view text);
  static BksTable load(const std::filesystem::path& path);

  void set(const std::string& name, long long value);
  std::optional<long long> find(const std::string& name) const;
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::map<std::string, long long> values_;
};

/// 100 * (cost - bks) / bks.
double gap_percent(double cost, double bks);

}  // namespace hgs::tools
