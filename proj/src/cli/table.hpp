#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace maxdep::cli {

// Empty cells (monostate) print as an empty CSV field or JSON null.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_row(std::vector<Cell> row);
  std::size_t size() const { return rows_.size(); }

  // CSV: "# <metadata>" line, header row, rows (RFC 4180 quoting).
  void write_csv(std::ostream& os, const std::string& metadata) const;
  // JSON lines: {"meta": ...}, {"columns": [...]}, then one object per row.
  // Non-finite doubles become null.
  void write_jsonl(std::ostream& os, const std::string& metadata) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<Cell>> rows_;
};

// Shortest representation that parses back to the same double.
std::string format_double(double v);

}  // namespace maxdep::cli
