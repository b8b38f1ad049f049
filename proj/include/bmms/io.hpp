#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "bmms/generators.hpp"

// Space-file JSON input/output and deterministic report writers.  All
// numeric output is printed with 12 significant digits so identical runs
// produce byte-identical files.

namespace bmms::io {

// "%.12g" formatting used for every number the tool emits.
std::string format_number(double v);

SpaceData load_space(const std::string& path);
void save_space(const std::string& path, const SpaceData& data);

// Serializes with ordered keys and %.12g numbers (nlohmann's default dump
// prints shortest round-trip forms, which exceed the 12-digit contract).
std::string dump_json(const nlohmann::ordered_json& j, int indent = 2);
void write_json(const std::string& path, const nlohmann::ordered_json& j);

// CSV table with the versioned schema header comment, then a column-name
// row, then data rows formatted with format_number.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);
  void add_row(const std::vector<double>& values);
  void add_mixed_row(const std::vector<std::string>& cells);
  std::string str() const;
  void write(const std::string& path) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace bmms::io
