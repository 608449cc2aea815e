#pragma once

/**
 * @file report.hpp
 * @brief Report values and their deterministic rendering as table, JSON or CSV.
 *
 * A Report is an ordered list of scalar fields plus an optional table.
 * Rendering is byte-stable: keys keep insertion order, reals are printed in
 * scientific notation with 9 significant digits through the C locale, and
 * the output ends in exactly one newline.
 *
 * JSON layout:
 *   { "command": ..., <fields in order>, "rows": [ {<column>: value, ...}, ... ], "notes": [...] }
 * "rows" appears only when the report has a table, "notes" only when non-empty.
 *
 * CSV layout: the table (header row of column names, one line per row) when
 * the report has one, otherwise "key,value" followed by one line per field.
 */

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace smeared {

using Value = std::variant<std::monostate, bool, long long, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

struct Report {
  std::string command;
  std::vector<std::pair<std::string, Value>> fields{};
  std::optional<Table> table{};
  std::vector<std::string> notes{};

  Report& add(std::string key, Value v) {
    fields.emplace_back(std::move(key), std::move(v));
    return *this;
  }
};

enum class Format { table, json, csv };

inline std::optional<Format> parse_format(std::string_view s) {
  if (s == "table") return Format::table;
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  return std::nullopt;
}

namespace detail {

inline std::string format_real(double v) {
  if (v == 0.0) return "0.00000000e+00";  // no "-0"
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

inline std::string json_escape(std::string_view s) {
  std::string out = "\"";
  for (const char ch : s) {
    switch (ch) {
    case '"': out += "\\\""; break;
    case '\\': out += "\\\\"; break;
    case '\n': out += "\\n"; break;
    case '\t': out += "\\t"; break;
    default:
      if (static_cast<unsigned char>(ch) < 0x20) {
        char buf[8];
        std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(ch)));
        out += buf;
      } else {
        out += ch;
      }
    }
  }
  return out + "\"";
}

inline std::string plain(const Value& v) {
  struct {
    std::string operator()(std::monostate) const { return "null"; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(long long i) const { return std::to_string(i); }
    std::string operator()(double d) const { return format_real(d); }
    std::string operator()(const std::string& s) const { return s; }
  } visitor;
  return std::visit(visitor, v);
}

inline std::string json_value(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return json_escape(*s);
  return plain(v);
}

inline std::string csv_cell(const Value& v) {
  std::string s = plain(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

inline std::string render_json(const Report& r) {
  std::string out = "{\n  \"command\": " + json_escape(r.command);
  for (const auto& [key, value] : r.fields) out += ",\n  " + json_escape(key) + ": " + json_value(value);
  if (r.table) {
    out += ",\n  \"rows\": [";
    for (std::size_t i = 0; i < r.table->rows.size(); ++i) {
      out += i ? ",\n    {" : "\n    {";
      const auto& row = r.table->rows[i];
      for (std::size_t k = 0; k < r.table->columns.size() && k < row.size(); ++k) {
        out += (k ? ", " : "") + json_escape(r.table->columns[k]) + ": " + json_value(row[k]);
      }
      out += "}";
    }
    out += r.table->rows.empty() ? "]" : "\n  ]";
  }
  if (!r.notes.empty()) {
    out += ",\n  \"notes\": [";
    for (std::size_t i = 0; i < r.notes.size(); ++i) out += (i ? ", " : "") + json_escape(r.notes[i]);
    out += "]";
  }
  return out + "\n}\n";
}

inline std::string render_csv(const Report& r) {
  std::string out;
  if (r.table) {
    for (std::size_t k = 0; k < r.table->columns.size(); ++k) out += (k ? "," : "") + r.table->columns[k];
    out += "\n";
    for (const auto& row : r.table->rows) {
      for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + csv_cell(row[k]);
      out += "\n";
    }
    return out;
  }
  out = "key,value\n";
  for (const auto& [key, value] : r.fields) out += key + "," + csv_cell(value) + "\n";
  return out;
}

inline std::string render_table(const Report& r) {
  std::string out = r.command + "\n";
  std::size_t width = 0;
  for (const auto& f : r.fields) width = std::max(width, f.first.size());
  for (const auto& [key, value] : r.fields) {
    out += "  " + key + std::string(width - key.size(), ' ') + "  " + plain(value) + "\n";
  }
  if (r.table) {
    const auto& t = *r.table;
    std::vector<std::size_t> widths(t.columns.size());
    for (std::size_t k = 0; k < t.columns.size(); ++k) widths[k] = t.columns[k].size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : t.rows) {
      auto& line = cells.emplace_back();
      for (std::size_t k = 0; k < row.size() && k < widths.size(); ++k) {
        line.push_back(plain(row[k]));
        widths[k] = std::max(widths[k], line.back().size());
      }
    }
    auto emit = [&](const std::vector<std::string>& line) {
      std::string text = " ";
      for (std::size_t k = 0; k < line.size(); ++k) text += " " + line[k] + std::string(widths[k] - line[k].size(), ' ');
      while (!text.empty() && text.back() == ' ') text.pop_back();
      out += text + "\n";
    };
    if (!r.fields.empty()) out += "\n";
    emit(t.columns);
    for (const auto& line : cells) emit(line);
  }
  for (const auto& note : r.notes) out += "note: " + note + "\n";
  return out;
}

} // namespace detail

inline std::string render(const Report& r, Format format) {
  switch (format) {
  case Format::json: return detail::render_json(r);
  case Format::csv: return detail::render_csv(r);
  case Format::table: return detail::render_table(r);
  }
  return detail::render_table(r);
}

} // namespace smeared
