#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mtspec/grid.hpp"
#include "mtspec/tapers.hpp"

namespace mtspec {

/// Real samples x_1..x_N at unit spacing. N >= 2, all finite.
class TimeSeries {
 public:
  explicit TimeSeries(std::vector<double> samples);

  std::size_t size() const noexcept { return x_.size(); }
  std::span<const double> samples() const noexcept { return x_; }
  double operator[](std::size_t i) const noexcept { return x_[i]; }

 private:
  std::vector<double> x_;
};

enum class WeightKind { uniform, parabolic, custom };

std::string to_string(WeightKind kind);
WeightKind parse_weight_kind(const std::string& name);

/// Nonnegative taper weights μ_1..μ_K summing to one.
class WeightScheme {
 public:
  WeightScheme(WeightKind kind, std::vector<double> weights);

  WeightKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return mu_.size(); }
  std::span<const double> weights() const noexcept { return mu_; }
  double operator[](std::size_t k) const noexcept { return mu_[k]; }
  double sum_of_squares() const noexcept;

 private:
  WeightKind kind_;
  std::vector<double> mu_;
};

/// uniform: μ_k = 1/K. parabolic: μ_k = C (1 - k²/K²), normalized; K = 1
/// falls back to (1). Note the parabolic μ_K is zero.
WeightScheme make_weights(WeightKind kind, std::size_t k_count);

enum class Scale { linear, log };

struct SpectralEstimate {
  FrequencyGrid grid;
  std::vector<double> values;
  std::vector<int> k_used;  // per grid point
  WeightKind weight_kind;
  Scale scale;

  /// Edge bins (f = 0, f = 1/2) and non-finite values.
  bool is_flagged(std::size_t j) const;
};

/// y(f_j) = Σ_{n=1}^N x_n e^{-i2π n f_j} by one zero-padded FFT.
std::vector<std::complex<double>> dft(const TimeSeries& series,
                                      const FrequencyGrid& grid);

/// Ŝ(f) = Σ_k μ_k |Σ_n v_n^(k) x_n e^{-i2π n f}|², one FFT per taper.
SpectralEstimate multitaper_estimate(const TimeSeries& series,
                                     const TaperFamily& family,
                                     const WeightScheme& weights,
                                     const FrequencyGrid& grid);

/// Sinusoidal multitaper estimate from a single transform of the raw data:
/// Ŝ(f) = Σ_j μ_j / (2(N+1)) |y(f + j/(2N+2)) - y(f - j/(2N+2))|².
/// The grid size must be a multiple of 2(N+1).
SpectralEstimate sinusoidal_estimate_fast(const TimeSeries& series,
                                          const WeightScheme& weights,
                                          const FrequencyGrid& grid);

/// Asymptotic bias² + variance of a weighted multitaper estimate at a
/// frequency with spectrum s and second derivative s2:
/// [½ s2 Σ λ_k μ_k]² + s² Σ μ_k².
double expected_square_error(double s, double s2, const WeightScheme& weights,
                             std::span<const double> local_biases);

/// Unrounded [12 s N² / |s2|]^{2/5}; +inf when s2 vanishes.
double k_opt_continuous(double s, double s2, std::size_t n);

/// Taper count minimizing the uniform sinusoidal loss, rounded to nearest
/// (ties up) and clamped to [k_min, k_max]. |s2| < 1e-300 s maps to k_max.
std::size_t k_opt(double s, double s2, std::size_t n, std::size_t k_min,
                  std::size_t k_max);

}  // namespace mtspec
