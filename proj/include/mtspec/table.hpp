#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace mtspec {

/// Labelled real matrix used for the comparison tables.
struct ComparisonTable {
  std::string row_header;
  std::vector<std::string> row_labels;
  std::vector<std::string> column_labels;
  std::vector<std::vector<double>> values;  // values[row][column]

  ComparisonTable(std::string row_header, std::vector<std::string> column_labels);

  void add_row(std::string label, std::vector<double> row);
  double at(std::size_t row, std::size_t column) const;
  std::size_t rows() const noexcept { return values.size(); }
  std::size_t columns() const noexcept { return column_labels.size(); }

  /// Header line then one line per row; numbers printed with `digits`
  /// significant digits.
  void write_csv(std::ostream& out, int digits = 10) const;
};

}  // namespace mtspec
