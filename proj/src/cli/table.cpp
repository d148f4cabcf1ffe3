#include "table.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace maxdep::cli {

namespace {

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string cell_text(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else {
          return v;
        }
      },
      c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      c);
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns_.size()) throw std::logic_error("table row width mismatch");
  rows_.push_back(std::move(row));
}

void Table::write_csv(std::ostream& os, const std::string& metadata) const {
  os << "# maxdep " << metadata << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << csv_quote(columns_[i]);
  os << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_quote(cell_text(row[i]));
    os << '\n';
  }
}

void Table::write_jsonl(std::ostream& os, const std::string& metadata) const {
  os << nlohmann::ordered_json{{"meta", metadata}}.dump() << '\n';
  os << nlohmann::ordered_json{{"columns", columns_}}.dump() << '\n';
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = cell_json(row[i]);
    os << obj.dump() << '\n';
  }
}

}  // namespace maxdep::cli
