// Report plumbing shared by the CLI: headers with hashes and versions, CSV
// formatting, and file output.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "szego/manifold.hpp"

namespace szego {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

std::uint64_t config_hash(const nlohmann::json& config);
std::string hex64(std::uint64_t v);

/// {schema_version, tool_version, config, config_hash, manifold, manifold_hash}.
nlohmann::json report_header(const nlohmann::json& config, const Manifold& M);

/// Shortest round-trip decimal form.
std::string format_double(double v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);
  void row(const std::vector<std::string>& cells);
  std::string str() const;

 private:
  std::size_t width_;
  std::string text_;
};

/// Writes `text` to dir/name, creating dir. Empty dir means stdout.
void write_output(const std::string& dir, const std::string& name, const std::string& text);

}  // namespace szego
