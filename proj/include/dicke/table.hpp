#pragma once

// Row-oriented output in CSV (header row, RFC-4180 quoting) or
// newline-delimited JSON (one object per row). Floating-point values are
// written with 17 significant digits; non-finite values become empty CSV
// fields and JSON null.

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace dicke {

enum class Format { Csv, Json };

using Cell = std::variant<std::monostate, bool, long, double, std::string, std::vector<double>,
                          std::vector<std::string>>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

std::string format_double(double v);

void write_table(std::ostream& out, const Table& table, Format format);

}  // namespace dicke
