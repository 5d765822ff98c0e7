#pragma once

// Tabular output shared by the CLI subcommands.
//
// CSV dialect: comma separated, '.' decimal point, values printed with 17
// significant digits. Leading "# key: value" lines carry the parameter
// echo, then one row of column names, then data rows.
//
// JSON: {"params": {...}, "axes": [...], "columns": [...], "data": [[...], ...]}

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "toptrap/sweep.hpp"

namespace toptrap::cli {

struct AxisInfo {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  std::size_t steps = 0;
  std::string scale = "linear";
};

struct Table {
  Provenance params;
  std::vector<AxisInfo> axes;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// Index of `name` in columns; throws std::out_of_range.
  std::size_t column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Axis columns first, then one column per result table.
Table table_from_sweep(const SweepResult& r);

void write_csv(std::ostream& os, const Table& t);
/// Inverse of write_csv. Throws FormatError on malformed input.
Table read_csv(std::istream& is);
void write_json(std::ostream& os, const Table& t);

std::string format_double(double v);

}  // namespace toptrap::cli
