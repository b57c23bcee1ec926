#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mtspec {

/// Symmetric Toeplitz matrix stored by its first row: entry (n, m) is
/// first_row[|n - m|].
class SymmetricToeplitz {
 public:
  explicit SymmetricToeplitz(std::vector<double> first_row);

  std::size_t size() const noexcept { return row_.size(); }
  double operator()(std::size_t n, std::size_t m) const noexcept {
    return row_[n > m ? n - m : m - n];
  }
  std::span<const double> first_row() const noexcept { return row_; }

  Eigen::MatrixXd to_dense() const;

  /// v^T T v.
  double quadratic_form(std::span<const double> v) const;
  std::vector<double> multiply(std::span<const double> v) const;

 private:
  std::vector<double> row_;
};

/// Local-bias matrix: a_nm = ∫ f² e^{i2π(n-m)f} df over [-1/2, 1/2],
/// i.e. 1/12 on the diagonal and (-1)^{n-m} / (2π²(n-m)²) elsewhere.
SymmetricToeplitz local_bias_matrix(std::size_t n);

/// Concentration matrix for the band [-w, w]: 2w on the diagonal and
/// sin(2πw(n-m)) / (π(n-m)) elsewhere. Requires 0 < w <= 1/2.
SymmetricToeplitz concentration_matrix(std::size_t n, double w);

}  // namespace mtspec
