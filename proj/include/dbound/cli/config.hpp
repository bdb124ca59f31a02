#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace dbound::cli {

/// Flat `key = value` text with `[section]` headers. '#' and ';' start
/// comments. Keys must appear inside a section and may not repeat.
struct ConfigEntry {
  std::string value;
  int line = 0;
};

class ConfigFile {
 public:
  static ConfigFile parse(std::istream& in, const std::string& source);
  static ConfigFile load(const std::string& path);

  /// Throws ConfigError for sections or keys not listed in schema.
  void check_schema(const std::map<std::string, std::set<std::string>>& schema) const;

  bool has(const std::string& section, const std::string& key) const;
  const ConfigEntry* find(const std::string& section, const std::string& key) const;
  const std::string& source() const { return source_; }

  /// Typed getters leave `out` untouched when the key is absent.
  void get(const std::string& section, const std::string& key, double& out) const;
  void get(const std::string& section, const std::string& key, std::uint64_t& out) const;
  void get(const std::string& section, const std::string& key, int& out) const;
  void get(const std::string& section, const std::string& key, std::string& out) const;
  void get(const std::string& section, const std::string& key, std::vector<double>& out) const;

 private:
  [[noreturn]] void fail(const ConfigEntry& entry, const std::string& key,
                         const std::string& message) const;

  std::string source_;
  std::map<std::string, std::map<std::string, ConfigEntry>> sections_;
};

}  // namespace dbound::cli
