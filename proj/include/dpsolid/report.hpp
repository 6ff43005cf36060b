#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "dpsolid/error.hpp"

namespace dps::report {

enum class Format { Table, Csv };

inline Format parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "csv") return Format::Csv;
  throw ValidationError("format must be 'table' or 'csv'");
}

// Every table has a header row and a units row.
struct Table {
  std::string title;
  std::vector<std::string> headers;
  std::vector<std::string> units;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) {
    if (row.size() != headers.size()) throw Error("table row width mismatch");
    rows.push_back(std::move(row));
  }
};

inline std::string num(double v, int digits = 6) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return fmt::format("{:.{}g}", v, digits);
}

inline std::string opt(const std::optional<double>& v, int digits = 6) { return v ? num(*v, digits) : "n/a"; }

// UTF-8 aware column width.
inline size_t width(const std::string& s) {
  size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

inline std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) {
    if (c == '"') o += '"';
    o += c;
  }
  return o + "\"";
}

inline void write(std::ostream& out, const Table& t, Format f) {
  if (f == Format::Csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_cell(cells[i]);
      out << "\n";
    };
    if (!t.title.empty()) out << "# " << t.title << "\n";
    line(t.headers);
    line(t.units);
    for (auto& r : t.rows) line(r);
    return;
  }
  std::vector<size_t> w(t.headers.size(), 0);
  auto grow = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) w[i] = std::max(w[i], width(cells[i]));
  };
  std::vector<std::string> units;
  for (auto& u : t.units) units.push_back("[" + u + "]");
  grow(t.headers);
  grow(units);
  for (auto& r : t.rows) grow(r);
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) s += "  ";
      std::string pad(w[i] - width(cells[i]), ' ');
      s += i == 0 ? cells[i] + pad : pad + cells[i];
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    out << s << "\n";
  };
  if (!t.title.empty()) out << t.title << "\n";
  line(t.headers);
  line(units);
  for (auto& r : t.rows) line(r);
}

// Two-column delimited trace with units in the header.
inline void write_trace(std::ostream& out, const std::string& x, const std::string& y,
                        const std::vector<std::pair<double, double>>& pts) {
  out << x << "," << y << "\n";
  for (auto& [a, b] : pts) out << fmt::format("{:.9g},{:.9g}\n", a, b);
}

}  // namespace dps::report
