#include "mtspec/table.hpp"

#include <cmath>

#include "mtspec/error.hpp"
#include "mtspec/io.hpp"

namespace mtspec {

ComparisonTable::ComparisonTable(std::string row_header,
                                 std::vector<std::string> column_labels)
    : row_header(std::move(row_header)), column_labels(std::move(column_labels)) {}

void ComparisonTable::add_row(std::string label, std::vector<double> row) {
  if (row.size() != column_labels.size()) {
    throw ArgumentError("ComparisonTable: row width does not match header");
  }
  for (double v : row) {
    if (!std::isfinite(v)) throw ArgumentError("ComparisonTable: non-finite entry in row " + label);
  }
  row_labels.push_back(std::move(label));
  values.push_back(std::move(row));
}

double ComparisonTable::at(std::size_t row, std::size_t column) const {
  return values.at(row).at(column);
}

void ComparisonTable::write_csv(std::ostream& out, int digits) const {
  out << row_header;
  for (const auto& c : column_labels) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < values.size(); ++r) {
    out << row_labels[r];
    for (double v : values[r]) out << ',' << io::format_number(v, digits);
    out << '\n';
  }
}

}  // namespace mtspec
