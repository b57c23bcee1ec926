#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "mtspec/grid.hpp"
#include "mtspec/tapers.hpp"

namespace mtspec {

/// V(f_j) = Σ_{n=1}^N v_n e^{-i2π n f_j} on a frequency grid.
struct SpectralWindow {
  FrequencyGrid grid;
  std::vector<std::complex<double>> values;

  /// Riemann sum of |V|² over the grid; equals 1 for a unit taper when
  /// the grid has at least N points.
  double energy() const;
};

SpectralWindow spectral_window(const Taper& taper, const FrequencyGrid& grid);

/// Closed-form transform of the k-th sinusoidal taper of length n, written
/// as a difference of two Dirichlet kernels centred at ±k/(2(n+1)).
std::complex<double> sinusoidal_window_closed(std::size_t n, std::size_t k,
                                              double f);

/// Transform of the continuous-time minimum-bias taper sqrt(2) sin(π k t)
/// on [0, 1]: V(f) = ∫₀¹ v(t) e^{-i2πft} dt.
std::complex<double> continuous_mb_window(std::size_t k, double f);

}  // namespace mtspec
