#include "rqi/sweep.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

namespace rqi {

void SweepResult::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument("SweepResult: row width does not match the header");
  }
  rows.push_back(std::move(row));
}

void SweepResult::sort_rows(std::size_t key_columns) {
  const std::size_t k = std::min(key_columns, columns.size());
  std::stable_sort(rows.begin(), rows.end(), [k](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.begin(), a.begin() + k, b.begin(), b.begin() + k);
  });
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string to_csv(const SweepResult& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (i) out += ',';
    out += r.columns[i];
  }
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

const char* library_version() { return "1.0.0"; }

}  // namespace rqi
