#include "baxxz/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace baxxz {

std::vector<Cell>& Table::add_row() {
  rows.emplace_back(columns.size());
  return rows.back();
}

void Table::require_rectangular() const {
  for (const auto& r : rows)
    if (r.size() != columns.size())
      throw Error("table row width does not match the header");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string cell_to_string(const Cell& c) {
  switch (c.index()) {
    case 0: return "";
    case 1: return std::to_string(std::get<std::int64_t>(c));
    case 2: return format_double(std::get<double>(c));
    default: return std::get<std::string>(c);
  }
}

namespace {
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += '"';
  return out;
}
}  // namespace

std::string to_csv(const Table& t) {
  t.require_rectangular();
  std::string out;
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    if (j) out += ',';
    out += csv_field(t.columns[j]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += csv_field(cell_to_string(row[j]));
    }
    out += '\n';
  }
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (ch < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", ch);
          out += buf;
        } else {
          out += static_cast<char>(ch);
        }
    }
  }
  return out;
}

namespace {
void append_json_cell(std::string& out, const Cell& c) {
  switch (c.index()) {
    case 0: out += "null"; break;
    case 1: out += std::to_string(std::get<std::int64_t>(c)); break;
    case 2: {
      const double x = std::get<double>(c);
      if (std::isnan(x) || std::isinf(x)) {
        out += '"';
        out += format_double(x);
        out += '"';
      } else {
        out += format_double(x);
      }
      break;
    }
    default:
      out += '"';
      out += json_escape(std::get<std::string>(c));
      out += '"';
  }
}
}  // namespace

std::string to_json(const Table& t) {
  t.require_rectangular();
  std::string out = "{\"columns\":[";
  for (std::size_t j = 0; j < t.columns.size(); ++j) {
    if (j) out += ',';
    out += '"';
    out += json_escape(t.columns[j]);
    out += '"';
  }
  out += "],\"rows\":[";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < t.rows[i].size(); ++j) {
      if (j) out += ',';
      append_json_cell(out, t.rows[i][j]);
    }
    out += ']';
  }
  out += "]}\n";
  return out;
}

Table parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  auto end_field = [&] {
    record.push_back(field);
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    if (field_started || !field.empty() || !record.empty()) {
      end_field();
      records.push_back(record);
      record.clear();
    }
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        field_started = true;  // a comma implies a following field
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        break;
      default:
        field += ch;
        field_started = true;
    }
  }
  end_record();
  if (in_quotes) throw Error("parse_csv: unterminated quoted field");
  if (records.empty()) throw Error("parse_csv: empty input");

  Table t;
  t.columns = records.front();
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != t.columns.size())
      throw Error("parse_csv: ragged row");
    auto& row = t.add_row();
    for (std::size_t j = 0; j < records[i].size(); ++j)
      row[j] = records[i][j];
  }
  return t;
}

}  // namespace baxxz
