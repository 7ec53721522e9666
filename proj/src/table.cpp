#include "dicke/table.hpp"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

namespace dicke {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string json_string(const std::string& s) { return nlohmann::json(s).dump(); }

std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }

std::string csv_cell(const Cell& cell) {
  return std::visit(
      overloaded{
          [](std::monostate) { return std::string(); },
          [](bool b) { return std::string(b ? "true" : "false"); },
          [](long v) { return std::to_string(v); },
          [](double v) { return std::isfinite(v) ? format_double(v) : std::string(); },
          [](const std::string& s) { return csv_quote(s); },
          [](const std::vector<double>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (i) s += ';';
              s += std::isfinite(v[i]) ? format_double(v[i]) : "nan";
            }
            return s;
          },
          [](const std::vector<std::string>& v) {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (i) s += ';';
              s += v[i];
            }
            return csv_quote(s);
          },
      },
      cell);
}

std::string json_cell(const Cell& cell) {
  return std::visit(
      overloaded{
          [](std::monostate) { return std::string("null"); },
          [](bool b) { return std::string(b ? "true" : "false"); },
          [](long v) { return std::to_string(v); },
          [](double v) { return json_number(v); },
          [](const std::string& s) { return json_string(s); },
          [](const std::vector<double>& v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (i) s += ',';
              s += json_number(v[i]);
            }
            return s + "]";
          },
          [](const std::vector<std::string>& v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (i) s += ',';
              s += json_string(v[i]);
            }
            return s + "]";
          },
      },
      cell);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error(fmt::format("row has {} cells, table has {} columns", row.size(), columns.size()));
  }
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (v == 0.0) return "0";
  return fmt::format("{:.17g}", v);
}

void write_table(std::ostream& out, const Table& table, Format format) {
  if (format == Format::Csv) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      if (i) out << ',';
      out << csv_quote(table.columns[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out << ',';
        out << csv_cell(row[i]);
      }
      out << '\n';
    }
    return;
  }
  for (const auto& row : table.rows) {
    out << '{';
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << json_string(table.columns[i]) << ':' << json_cell(row[i]);
    }
    out << "}\n";
  }
}

}  // namespace dicke
