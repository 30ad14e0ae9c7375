#include "alphafair/table.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace alphafair {

namespace {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

struct CsvCell {
  std::string operator()(std::monostate) const { return ""; }
  std::string operator()(double x) const { return format_number(x); }
  std::string operator()(std::int64_t x) const { return std::to_string(x); }
  std::string operator()(bool x) const { return x ? "1" : "0"; }
  std::string operator()(const std::string& x) const { return csv_escape(x); }
};

struct JsonCell {
  nlohmann::json operator()(std::monostate) const { return nullptr; }
  nlohmann::json operator()(double x) const {
    if (!std::isfinite(x)) return format_number(x);
    // Round-trip through the 12-digit text so both formats carry one value.
    return std::strtod(format_number(x).c_str(), nullptr);
  }
  nlohmann::json operator()(std::int64_t x) const { return x; }
  nlohmann::json operator()(bool x) const { return x; }
  nlohmann::json operator()(const std::string& x) const { return x; }
};

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table row has " + std::to_string(row.size()) + " cells, expected " +
                           std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);  // no "-0"
  return buf;
}

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    os << (c ? "," : "") << csv_escape(table.columns[c]);
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << std::visit(CsvCell{}, row[c]);
    }
    os << '\n';
  }
}

nlohmann::json to_json(const Table& table) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      obj[table.columns[c]] = std::visit(JsonCell{}, row[c]);
    }
    out.push_back(std::move(obj));
  }
  return out;
}

void write_json(std::ostream& os, const Table& table) { os << to_json(table).dump(2) << '\n'; }

}  // namespace alphafair
