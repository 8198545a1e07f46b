#include "szego/report.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "szego/errors.hpp"

namespace szego {

std::uint64_t config_hash(const nlohmann::json& config) { return fnv1a(config.dump()); }

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

nlohmann::json report_header(const nlohmann::json& config, const Manifold& M) {
  nlohmann::json h;
  h["schema_version"] = kReportSchemaVersion;
  h["tool_version"] = kToolVersion;
  h["config"] = config;
  h["config_hash"] = hex64(config_hash(config));
  h["manifold"] = M.to_json();
  h["manifold_hash"] = hex64(M.hash());
  return h;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns) : width_(columns.size()) { row(columns); }

void CsvTable::row(const std::vector<std::string>& cells) {
  if (cells.size() != width_) throw PreconditionError("CSV row width mismatch");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) text_ += ',';
    text_ += cells[i];
  }
  text_ += '\n';
}

std::string CsvTable::str() const { return text_; }

void write_output(const std::string& dir, const std::string& name, const std::string& text) {
  if (dir.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::filesystem::create_directories(dir);
  std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + (std::filesystem::path(dir) / name).string());
  out << text;
}

}  // namespace szego
