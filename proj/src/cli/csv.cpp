#include "dbound/cli/csv.hpp"

#include "dbound/error.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace dbound::cli {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(' ');
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(' ') - first + 1);
}

constexpr const char* kUnitsPrefix = "units: ";

}  // namespace

std::string format_double(double value) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

void CsvWriter::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw Error(ErrorCode::dimension_mismatch, "CsvWriter: row has wrong number of cells");
  }
  rows_.push_back(std::move(cells));
}

std::string CsvWriter::render(const RunManifest& manifest) const {
  std::ostringstream out;
  out << "# scenario: " << manifest.scenario << '\n';
  out << "# version: " << manifest.version << '\n';
  out << "# seed: " << manifest.seed << '\n';
  for (const auto& [key, value] : manifest.config) out << "# config." << key << " = " << value << '\n';
  for (const auto& [key, value] : manifest.notes) out << "# " << key << ": " << value << '\n';
  if (manifest.duration_s >= 0.0) out << "# duration_s: " << format_double(manifest.duration_s) << '\n';
  out << "# " << kUnitsPrefix;
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i].unit;
  out << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i].name;
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

void CsvWriter::write(const std::filesystem::path& path, const RunManifest& manifest) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << render(manifest);
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::invalid_argument, "CsvTable: no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  const std::string& cell = rows.at(row).at(column(name));
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw Error(ErrorCode::invalid_argument, "CsvTable: '" + cell + "' is not a number");
  }
  return v;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  bool in_body = false;
  while (std::getline(in, line)) {
    if (!in_body && !line.empty() && line.front() == '#') {
      std::string meta = trim(line.substr(1));
      if (meta.rfind(kUnitsPrefix, 0) == 0) table.units = split(meta.substr(7), ',');
      table.metadata.push_back(std::move(meta));
      continue;
    }
    if (!in_body) {
      in_body = true;
      table.header = split(line, ',');
    } else if (!line.empty()) {
      auto cells = split(line, ',');
      if (cells.size() != table.header.size()) {
        throw Error(ErrorCode::invalid_argument, "parse_csv: ragged row '" + line + "'");
      }
      table.rows.push_back(std::move(cells));
    }
    table.body += line;
    table.body += '\n';
  }
  if (table.header.empty()) throw Error(ErrorCode::invalid_argument, "parse_csv: no header line");
  if (!table.units.empty() && table.units.size() != table.header.size()) {
    throw Error(ErrorCode::invalid_argument, "parse_csv: units line does not match header");
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

}  // namespace dbound::cli
