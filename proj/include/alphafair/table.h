#pragma once

// Column-oriented result tables and their CSV / JSON writers. Numbers are
// written with 12 significant digits in both formats.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace alphafair {

using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

std::string format_number(double x);

void write_csv(std::ostream& os, const Table& table);
nlohmann::json to_json(const Table& table);
void write_json(std::ostream& os, const Table& table);

}  // namespace alphafair
