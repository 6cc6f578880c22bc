#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "conrel/errors.hpp"

namespace conrel::csv {

inline std::string escape(std::string_view field) {
  const bool needs_quoting = field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quoting) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (const char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

inline std::string row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += escape(fields[i]);
  }
  out.push_back('\n');
  return out;
}

struct Row {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based line the row starts on
};

// RFC-4180 style parse of a whole file into rows of fields. Raises csv_error
// naming the 1-based line of the offending row.
inline std::vector<Row> parse(std::string_view text) {
  std::vector<Row> rows;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool row_open = false;
  std::size_t line = 1;
  std::size_t row_line = 1;

  const auto end_field = [&] {
    fields.push_back(std::move(field));
    field.clear();
  };
  const auto end_row = [&] {
    end_field();
    rows.push_back(Row{std::move(fields), row_line});
    fields.clear();
    row_open = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (!row_open) {
      row_open = true;
      row_line = line;
    }
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty())
          throw csv_error("line " + std::to_string(line) + ": stray quote inside a field");
        quoted = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        ++line;
        break;
      default:
        field.push_back(c);
    }
  }
  if (quoted)
    throw csv_error("line " + std::to_string(row_line) + ": unterminated quoted field");
  if (row_open) end_row();
  return rows;
}

}  // namespace conrel::csv
