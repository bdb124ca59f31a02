#include "dbound/cli/config.hpp"

#include "dbound/error.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace dbound::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void config_error(const std::string& source, int line, const std::string& message) {
  throw Error(ErrorCode::config_error, source + ":" + std::to_string(line) + ": " + message);
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in, const std::string& source) {
  ConfigFile cfg;
  cfg.source_ = source;
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto comment = raw.find_first_of("#;");
    const std::string text = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']' || text.size() < 3) config_error(source, line, "malformed section header");
      section = trim(text.substr(1, text.size() - 2));
      cfg.sections_[section];
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) config_error(source, line, "expected 'key = value'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) config_error(source, line, "empty key");
    if (section.empty()) config_error(source, line, "key '" + key + "' outside any [section]");
    auto& entries = cfg.sections_[section];
    if (entries.count(key)) {
      config_error(source, line, "duplicate key '" + key + "' (first set on line " +
                                     std::to_string(entries[key].line) + ")");
    }
    entries[key] = {value, line};
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::config_error, "cannot open config file '" + path + "'");
  return parse(in, path);
}

void ConfigFile::check_schema(const std::map<std::string, std::set<std::string>>& schema) const {
  for (const auto& [section, entries] : sections_) {
    const auto allowed = schema.find(section);
    if (allowed == schema.end()) {
      const int line = entries.empty() ? 0 : entries.begin()->second.line;
      throw Error(ErrorCode::config_error,
                  source_ + ": unknown section [" + section + "]" +
                      (line ? " (key on line " + std::to_string(line) + ")" : ""));
    }
    for (const auto& [key, entry] : entries) {
      if (!allowed->second.count(key)) {
        config_error(source_, entry.line, "unknown key '" + key + "' in [" + section + "]");
      }
    }
  }
}

const ConfigEntry* ConfigFile::find(const std::string& section, const std::string& key) const {
  const auto s = sections_.find(section);
  if (s == sections_.end()) return nullptr;
  const auto e = s->second.find(key);
  return e == s->second.end() ? nullptr : &e->second;
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

void ConfigFile::fail(const ConfigEntry& entry, const std::string& key,
                      const std::string& message) const {
  config_error(source_, entry.line, "field '" + key + "': " + message);
}

void ConfigFile::get(const std::string& section, const std::string& key, double& out) const {
  if (const auto* e = find(section, key)) {
    if (!parse_number(e->value, out)) fail(*e, key, "expected a number, got '" + e->value + "'");
  }
}

void ConfigFile::get(const std::string& section, const std::string& key, std::uint64_t& out) const {
  if (const auto* e = find(section, key)) {
    if (!parse_number(e->value, out)) {
      fail(*e, key, "expected a non-negative integer, got '" + e->value + "'");
    }
  }
}

void ConfigFile::get(const std::string& section, const std::string& key, int& out) const {
  if (const auto* e = find(section, key)) {
    if (!parse_number(e->value, out)) fail(*e, key, "expected an integer, got '" + e->value + "'");
  }
}

void ConfigFile::get(const std::string& section, const std::string& key, std::string& out) const {
  if (const auto* e = find(section, key)) out = e->value;
}

void ConfigFile::get(const std::string& section, const std::string& key,
                     std::vector<double>& out) const {
  const auto* e = find(section, key);
  if (!e) return;
  std::vector<double> values;
  std::stringstream ss(e->value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    if (!parse_number(trim(item), v)) fail(*e, key, "bad list element '" + trim(item) + "'");
    values.push_back(v);
  }
  if (values.empty()) fail(*e, key, "empty list");
  out = std::move(values);
}

}  // namespace dbound::cli
