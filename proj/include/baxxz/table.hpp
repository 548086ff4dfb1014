#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "baxxz/common.hpp"

namespace baxxz {

// A cell is empty, an integer, a double, or a string.  Doubles are emitted
// with enough digits to round-trip exactly.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  std::vector<Cell>& add_row();
  void require_rectangular() const;  // throws on ragged rows
};

// Shortest decimal that parses back to the same double ("%.17g" fallback).
std::string format_double(double x);

// Render a cell for CSV (empty for monostate).
std::string cell_to_string(const Cell& c);

// RFC-4180-style CSV: header row, minimal quoting (quote only when the field
// contains a comma, quote, or newline), "\n" line endings.
std::string to_csv(const Table& t);

// JSON: {"columns": [...], "rows": [[...], ...]} with keys in that fixed
// order, nulls for empty cells, and round-trip double formatting.  Written
// by hand so the byte stream is stable across platforms and library
// versions.
std::string to_json(const Table& t);

// Parse CSV produced by to_csv.  Every field comes back as a string cell;
// tests convert as needed.  Handles quoted fields and embedded quotes.
Table parse_csv(const std::string& text);

// JSON string escaping for the hand-rolled writers (shared with sweep/cache).
std::string json_escape(const std::string& s);

}  // namespace baxxz
