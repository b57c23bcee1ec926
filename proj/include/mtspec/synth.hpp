#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "mtspec/adaptive.hpp"
#include "mtspec/estimator.hpp"

namespace mtspec {

/// Gaussian innovations from std::mt19937_64 (output sequence fixed by the
/// standard) through Box-Muller on 53-bit uniforms in (0, 1). Both
/// Box-Muller outputs are used, so draws are identical across platforms.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed);
  double next();

 private:
  double uniform_open();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// White noise (no coefficients) or AR(p): x_t = Σ a_j x_{t-j} + e_t,
/// e_t ~ N(0, σ²).
struct ProcessSpec {
  std::vector<double> ar;  // a_1..a_p
  double variance = 1.0;   // σ²
  std::uint64_t seed = 0;
  std::size_t burn_in = 1000;

  static ProcessSpec white(double variance, std::uint64_t seed = 0);
  static ProcessSpec autoregressive(std::vector<double> coefficients,
                                    double variance, std::uint64_t seed = 0);
  /// AR(2) with complex poles at radius r and angles ±2π f_peak.
  static ProcessSpec ar2_peak(double radius, double f_peak, double variance,
                              std::uint64_t seed = 0);

  /// Throws ArgumentError unless σ² > 0 and 1 - Σ a_j z^j has no roots in
  /// the closed unit disc.
  void validate() const;

  /// Largest modulus of the characteristic roots (reciprocal roots of the
  /// AR polynomial); 0 for white noise.
  double spectral_radius() const;
};

/// Samples after max(burn_in, 10 × slowest decay time) discarded draws.
TimeSeries generate(const ProcessSpec& spec, std::size_t n);

/// S(f) = σ² / |1 - Σ a_j e^{-i2π j f}|².
SpectralEstimate true_spectrum(const ProcessSpec& spec, const FrequencyGrid& grid);

/// Analytic θ''(f) (and θ', θ) of ln S(f).
CurvatureProfile true_log_curvature(const ProcessSpec& spec,
                                    const FrequencyGrid& grid);

/// Autocovariances γ_0..γ_max_lag from the Yule-Walker equations.
std::vector<double> autocovariance(const ProcessSpec& spec, std::size_t max_lag);

}  // namespace mtspec
