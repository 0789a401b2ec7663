// sweep.hpp
// Tabular parameter-sweep results and their CSV form.

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace rqi {

struct SweepResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Free-form key/value provenance (parameters, grid, version).
  std::vector<std::pair<std::string, std::string>> provenance;

  /// Appends a row; throws std::invalid_argument on a width mismatch.
  void add_row(std::vector<double> row);
  /// Sorts rows lexicographically on the first `key_columns` columns.
  void sort_rows(std::size_t key_columns);
};

/// Round-trippable "%.17g" formatting.
std::string format_double(double x);

/// Header line plus one line per row, LF terminated.
std::string to_csv(const SweepResult& r);

/// Library version string recorded in provenance blocks.
const char* library_version();

}  // namespace rqi
