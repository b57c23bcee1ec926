#pragma once

#include <cstddef>

namespace mtspec {

/// Uniform frequency grid f_j = j/m, j = 0..m-1, in cycles per sample.
///
/// frequency() reports the value wrapped to [-1/2, 1/2); the storage order
/// is always the FFT order j = 0..m-1.
class FrequencyGrid {
 public:
  explicit FrequencyGrid(std::size_t m);

  /// m = 2(N+1) * ceil(2N/(N+1)): at least 2N points and a multiple of
  /// 2(N+1), so the fast sinusoidal path shifts by whole bins.
  static FrequencyGrid for_estimation(std::size_t n);

  /// 16 N points, the default resolution for spectral-window plots.
  static FrequencyGrid for_window(std::size_t n);

  std::size_t size() const noexcept { return m_; }
  double step() const noexcept { return 1.0 / static_cast<double>(m_); }
  double frequency(std::size_t j) const noexcept;

  /// True for the bins at f = 0 and f = -1/2 (Nyquist), where the local
  /// error theory does not apply.
  bool is_edge(std::size_t j) const noexcept;

  bool operator==(const FrequencyGrid&) const = default;

 private:
  std::size_t m_;
};

}  // namespace mtspec
