#include "mtspec/toeplitz.hpp"

#include <cmath>
#include <numbers>

#include "mtspec/error.hpp"

namespace mtspec {

SymmetricToeplitz::SymmetricToeplitz(std::vector<double> first_row)
    : row_(std::move(first_row)) {
  if (row_.empty()) throw ArgumentError("SymmetricToeplitz: empty first row");
  for (double v : row_) {
    if (!std::isfinite(v)) throw ArgumentError("SymmetricToeplitz: non-finite entry");
  }
}

Eigen::MatrixXd SymmetricToeplitz::to_dense() const {
  const auto n = static_cast<Eigen::Index>(row_.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = row_[static_cast<std::size_t>(std::abs(i - j))];
  }
  return m;
}

double SymmetricToeplitz::quadratic_form(std::span<const double> v) const {
  if (v.size() != row_.size()) throw ArgumentError("SymmetricToeplitz: vector length mismatch");
  // Σ_d t_d Σ_i v_i v_{i+d}, counting off-diagonals twice.
  const std::size_t n = v.size();
  double total = 0.0;
  for (std::size_t d = 0; d < n; ++d) {
    double lag = 0.0;
    for (std::size_t i = 0; i + d < n; ++i) lag += v[i] * v[i + d];
    total += (d == 0 ? 1.0 : 2.0) * row_[d] * lag;
  }
  return total;
}

std::vector<double> SymmetricToeplitz::multiply(std::span<const double> v) const {
  if (v.size() != row_.size()) throw ArgumentError("SymmetricToeplitz: vector length mismatch");
  const std::size_t n = v.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += (*this)(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

SymmetricToeplitz local_bias_matrix(std::size_t n) {
  if (n < 1) throw ArgumentError("local_bias_matrix: n must be >= 1");
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  std::vector<double> row(n);
  row[0] = 1.0 / 12.0;
  for (std::size_t d = 1; d < n; ++d) {
    const double dd = static_cast<double>(d);
    row[d] = (d % 2 == 0 ? 1.0 : -1.0) / (2.0 * pi2 * dd * dd);
  }
  return SymmetricToeplitz(std::move(row));
}

SymmetricToeplitz concentration_matrix(std::size_t n, double w) {
  if (n < 1) throw ArgumentError("concentration_matrix: n must be >= 1");
  if (!(w > 0.0 && w <= 0.5)) throw ArgumentError("concentration_matrix: halfwidth must lie in (0, 1/2]");
  std::vector<double> row(n);
  row[0] = 2.0 * w;
  for (std::size_t d = 1; d < n; ++d) {
    const double dd = static_cast<double>(d);
    row[d] = w == 0.5 ? 0.0 : std::sin(2.0 * std::numbers::pi * w * dd) / (std::numbers::pi * dd);
  }
  return SymmetricToeplitz(std::move(row));
}

}  // namespace mtspec
