#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "hbm/harness.hpp"

namespace hbm::harness {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("table row width does not match the header");
  }
  rows.push_back(std::move(row));
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string cell_text(const Cell& cell) {
  struct Visitor {
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  struct Visitor {
    nlohmann::ordered_json operator()(double v) const {
      if (!std::isfinite(v)) return format_double(v);
      return v;
    }
    nlohmann::ordered_json operator()(std::int64_t v) const { return v; }
    nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    nlohmann::ordered_json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, cell);
}

}  // namespace

void write_csv(std::ostream& os, const Table& table) {
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    os << (j ? "," : "") << table.columns[j];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      os << (j ? "," : "") << cell_text(row[j]);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Table& table) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t j = 0; j < row.size(); ++j) {
      obj[table.columns[j]] = cell_json(row[j]);
    }
    arr.push_back(std::move(obj));
  }
  os << arr.dump(2) << '\n';
}

void write_json_record(std::ostream& os, const Table& table) {
  if (table.rows.size() != 1) {
    throw std::logic_error("record output needs exactly one row");
  }
  nlohmann::ordered_json obj;
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    obj[table.columns[j]] = cell_json(table.rows[0][j]);
  }
  os << obj.dump(2) << '\n';
}

Table read_csv(std::istream& is) {
  Table table;
  std::string line;
  if (!std::getline(is, line)) {
    throw usage_error("empty CSV input");
  }
  {
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) table.columns.push_back(field);
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<Cell> row;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(field, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != field.size() || field.empty()) {
        throw usage_error("non-numeric CSV cell: " + field);
      }
      row.emplace_back(v);
    }
    table.add_row(std::move(row));
  }
  return table;
}

}  // namespace hbm::harness
