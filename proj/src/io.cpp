#include "bmms/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace bmms::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string escape_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if ((unsigned char)c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

void dump_value(const ordered_json& j, std::string& out, int indent, int depth) {
  const std::string pad(depth * indent, ' ');
  const std::string pad_in((depth + 1) * indent, ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad_in + escape_string(it.key()) + ": ";
        dump_value(it.value(), out, indent, depth + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // flat arrays of scalars stay on one line; nested ones break
      bool scalar = true;
      for (const auto& v : j)
        if (v.is_structured()) scalar = false;
      if (scalar) {
        out += "[";
        bool first = true;
        for (const auto& v : j) {
          if (!first) out += ", ";
          first = false;
          dump_value(v, out, indent, depth + 1);
        }
        out += "]";
      } else {
        out += "[\n";
        bool first = true;
        for (const auto& v : j) {
          if (!first) out += ",\n";
          first = false;
          out += pad_in;
          dump_value(v, out, indent, depth + 1);
        }
        out += "\n" + pad + "]";
      }
      return;
    }
    case ordered_json::value_t::string:
      out += escape_string(j.get<std::string>());
      return;
    case ordered_json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case ordered_json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      return;
    case ordered_json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      return;
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        out += format_number(v);
      }
      return;
    }
    default:
      out += "null";
      return;
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string dump_json(const ordered_json& j, int indent) {
  std::string out;
  dump_value(j, out, indent, 0);
  out += "\n";
  return out;
}

void write_json(const std::string& path, const ordered_json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("IoError", "cannot open '" + path + "' for writing");
  f << dump_json(j);
}

SpaceData load_space(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("IoError", "cannot open space file '" + path + "'");
  nlohmann::json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw Error("BadSpaceFile", std::string("JSON parse failure: ") + e.what());
  }
  SpaceData d;
  try {
    if (j.contains("points") && !j["points"].is_null()) {
      for (const auto& row : j["points"]) {
        d.points.push_back(row.get<std::vector<double>>());
      }
    }
    if (j.contains("metric")) {
      const auto& m = j["metric"];
      const std::string kind = m.value("kind", "euclidean");
      if (kind == "euclidean") {
        d.metric.kind = MetricKind::Euclidean;
      } else if (kind == "snowflake") {
        d.metric.kind = MetricKind::Snowflake;
        d.metric.snowflake_s = m.at("s").get<double>();
      } else if (kind == "matrix") {
        d.metric.kind = MetricKind::Matrix;
        for (const auto& row : m.at("matrix")) {
          d.metric.matrix.push_back(row.get<std::vector<double>>());
        }
      } else {
        throw Error("BadSpaceFile", "unknown metric kind '" + kind + "'");
      }
    }
    d.weights = j.at("weights").get<std::vector<double>>();
    if (j.contains("boundary") && !j["boundary"].is_null()) {
      d.boundary_indices = j["boundary"].at("indices").get<std::vector<int>>();
      d.boundary_weights = j["boundary"].at("weights").get<std::vector<double>>();
    }
    if (j.contains("metadata")) {
      for (auto it = j["metadata"].begin(); it != j["metadata"].end(); ++it) {
        d.metadata[it.key()] = it.value().get<double>();
      }
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error("BadSpaceFile", std::string("space schema violation: ") + e.what());
  }
  return d;
}

void save_space(const std::string& path, const SpaceData& data) {
  ordered_json j;
  if (data.points.empty()) {
    j["points"] = nullptr;
  } else {
    j["points"] = data.points;
  }
  ordered_json m;
  switch (data.metric.kind) {
    case MetricKind::Euclidean:
      m["kind"] = "euclidean";
      break;
    case MetricKind::Snowflake:
      m["kind"] = "snowflake";
      m["s"] = data.metric.snowflake_s;
      break;
    case MetricKind::Matrix:
      m["kind"] = "matrix";
      m["matrix"] = data.metric.matrix;
      break;
    case MetricKind::Custom:
      throw Error("BadSpaceFile", "callback metrics cannot be serialized");
  }
  j["metric"] = m;
  j["weights"] = data.weights;
  if (data.has_boundary()) {
    j["boundary"] = {{"indices", data.boundary_indices},
                     {"weights", data.boundary_weights}};
  }
  if (!data.metadata.empty()) {
    ordered_json meta;
    for (const auto& [k, v] : data.metadata) meta[k] = v;
    j["metadata"] = meta;
  }
  write_json(path, j);
}

CsvTable::CsvTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  rows_.push_back(std::move(cells));
}

void CsvTable::add_mixed_row(const std::vector<std::string>& cells) {
  rows_.push_back(cells);
}

std::string CsvTable::str() const {
  std::ostringstream out;
  out << "# besov-mms schema v1\n";
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    out << columns_[c] << (c + 1 < columns_.size() ? "," : "");
  }
  out << "\n";
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c] << (c + 1 < row.size() ? "," : "");
    }
    out << "\n";
  }
  return out.str();
}

void CsvTable::write(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("IoError", "cannot open '" + path + "' for writing");
  f << str();
}

}  // namespace bmms::io
