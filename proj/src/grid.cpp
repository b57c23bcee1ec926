#include "mtspec/grid.hpp"

#include "mtspec/error.hpp"

namespace mtspec {

FrequencyGrid::FrequencyGrid(std::size_t m) : m_(m) {
  if (m < 2) throw ArgumentError("FrequencyGrid: need at least 2 points");
}

FrequencyGrid FrequencyGrid::for_estimation(std::size_t n) {
  if (n < 1) throw ArgumentError("FrequencyGrid: series length must be >= 1");
  const std::size_t period = 2 * (n + 1);
  const std::size_t multiple = (2 * n + n) / (n + 1);  // ceil(2n/(n+1))
  return FrequencyGrid(period * multiple);
}

FrequencyGrid FrequencyGrid::for_window(std::size_t n) {
  if (n < 1) throw ArgumentError("FrequencyGrid: series length must be >= 1");
  return FrequencyGrid(16 * n);
}

double FrequencyGrid::frequency(std::size_t j) const noexcept {
  const double f = static_cast<double>(j) / static_cast<double>(m_);
  return 2 * j >= m_ ? f - 1.0 : f;
}

bool FrequencyGrid::is_edge(std::size_t j) const noexcept {
  return j == 0 || 2 * j == m_;
}

}  // namespace mtspec
