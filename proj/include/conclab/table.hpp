#pragma once

// CSV tables with '#' metadata lines and minimal SVG line charts.

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace conclab::table {

using Cell = std::variant<std::int64_t, double, std::string, bool>;

struct Table {
  std::vector<std::string> metadata;  ///< written as "# line"
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws std::invalid_argument when the row width does not match.
  void add_row(std::vector<Cell> row);
  /// Index of a column; throws std::out_of_range.
  std::size_t column(const std::string& name) const;
};

/// Doubles use 12 significant digits ("%.12g"); "inf", "-inf", "nan" for
/// non-finite values; booleans are "true"/"false".
std::string format_cell(const Cell& c);

void write_csv(const Table& t, std::ostream& out);
std::string to_csv(const Table& t);

struct Series {
  std::string name;
  std::vector<double> y;
};

/// Line chart of one or more series over shared x values; non-finite points
/// are skipped. Pure text, fixed layout, deterministic.
std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::vector<double>& x,
                           const std::vector<Series>& series, bool log_y = false);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace conclab::table
