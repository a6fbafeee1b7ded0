#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>

#include "dads/scenario.hpp"

namespace dads {

/// Flat `dotted.key = value` text with `#` comments, one key per line.
class Config {
 public:
  static Config parse(std::string_view text, const std::string& origin = "<text>");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string str(const std::string& key) const;
  std::string str(const std::string& key, const std::string& fallback) const;
  double num(const std::string& key) const;
  double num(const std::string& key, double fallback) const;
  long long integer(const std::string& key, long long fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  Vec list(const std::string& key) const;
  Vec list(const std::string& key, const Vec& fallback) const;

  /// Throws ConfigError listing keys that no accessor has read.
  void reject_unused() const;
  const std::string& origin() const { return origin_; }

 private:
  const std::string& raw(const std::string& key) const;
  ConfigError error(const std::string& key, const std::string& why) const;

  std::string origin_;
  std::map<std::string, std::string> values_;
  std::map<std::string, int> lines_;
  mutable std::set<std::string> used_;
};

/// Builds and validates a scenario; ConfigError on any problem.
Scenario scenario_from_config(const Config& cfg);
Scenario load_scenario(const std::filesystem::path& path);

/// Signal block `<prefix>.kind/dim/params/seed/bound`; `bound` selects the seeded constructor.
SignalSpec signal_from_config(const Config& cfg, const std::string& prefix, int default_dim);

}  // namespace dads
