#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace dbound::cli {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Metadata written as '#'-prefixed lines ahead of the column header.
struct RunManifest {
  std::string scenario;
  std::string version;
  std::string seed;  // "none" for deterministic scenarios
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::pair<std::string, std::string>> notes;
  /// Wall-clock seconds; omitted from the header when negative.
  double duration_s = -1.0;
};

/// Columns with a unit each, e.g. {"rmse_est", "m"}.
struct Column {
  std::string name;
  std::string unit;
};

class CsvWriter {
 public:
  CsvWriter(std::vector<Column> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<std::string> cells);
  void write(const std::filesystem::path& path, const RunManifest& manifest) const;
  std::string render(const RunManifest& manifest) const;

 private:
  std::vector<Column> columns_;
  std::vector<std::vector<std::string>> rows_;
};

/// Parsed back form of a file written by CsvWriter.
struct CsvTable {
  std::vector<std::string> metadata;  // comment lines without the leading "# "
  std::vector<std::string> header;
  std::vector<std::string> units;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
  /// Everything after the metadata block, verbatim.
  std::string body;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text);

}  // namespace dbound::cli
