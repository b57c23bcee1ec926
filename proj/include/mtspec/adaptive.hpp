#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mtspec/estimator.hpp"
#include "mtspec/kernel.hpp"

namespace mtspec {

/// How the chi-square log bias is removed from ln Ŝ.
///   full:    θ̂ = ln Ŝ - B_K     (centres white noise at zero)
///   literal: θ̂ = ln Ŝ - B_K / K
enum class LogCorrection { full, literal };

enum class AdaptiveMode { variable_k, variable_w };

std::string to_string(AdaptiveMode mode);
AdaptiveMode parse_adaptive_mode(const std::string& name);
std::string to_string(LogCorrection correction);
LogCorrection parse_log_correction(const std::string& name);

double log_correction(std::size_t k_count, LogCorrection correction);

/// Staging parameters of the plug-in estimator.
struct AdaptiveConfig {
  std::size_t pilot_k;
  std::size_t k_min;
  std::size_t k_max;
  double pilot_halfwidth;  // kernel halfwidth for smoothing the pilot log-spectrum
  AdaptiveMode mode = AdaptiveMode::variable_k;
  KernelShape kernel = KernelShape::epanechnikov;
  LogCorrection correction = LogCorrection::full;
  std::size_t derivative_step = 3;  // grid bins

  /// pilot_k = ceil(N^{8/15}), k_min = 4, k_max = ceil(N/4),
  /// pilot_halfwidth = pilot_k / (N+1) (twice the pilot taper bandwidth).
  /// k_min and k_max are widened to bracket pilot_k for short series.
  static AdaptiveConfig defaults(std::size_t n);

  /// Throws ArgumentError unless 1 <= k_min <= pilot_k <= k_max <= n and
  /// the halfwidth lies in (0, 1/2].
  void validate(std::size_t n) const;
};

/// Pilot estimates of the log-spectrum and its first two derivatives.
struct CurvatureProfile {
  FrequencyGrid grid;
  std::vector<double> values;  // θ''(f)
  std::vector<double> slope;   // θ'(f)
  std::vector<double> level;   // smoothed θ(f)
};

/// θ̂(f) = ln Ŝ(f) - correction, with Ŝ the uniform sinusoidal estimate.
/// Bins where Ŝ = 0 hold -inf and are flagged.
SpectralEstimate log_multitaper(const TimeSeries& series, std::size_t k_count,
                                const FrequencyGrid& grid,
                                LogCorrection correction = LogCorrection::full);

/// Minimizer over w of the smoothed log-multitaper error
///   θ''² [b w² + K²/(24N²)]² + C/(N w) (1 + 1/(2K))²,
/// clamped to [2/grid_size, 1/4]. θ'' = 0 gives the upper clamp.
double w_opt(double theta2, std::size_t n, std::size_t k_count,
             const KernelSpec& kernel, std::size_t grid_size);

/// Unclamped minimizer when the K²/(24N²) term is dropped:
/// w = [C (1 + 1/(2K))² / (4 b² θ''² N)]^{1/5}.
double w_opt_closed_form(double theta2, std::size_t n, std::size_t k_count,
                         const KernelSpec& kernel);

/// Pilot log-multitaper (K = pilot_k), smoothed with the pilot kernel, then
/// differentiated by central differences with `derivative_step` bins.
CurvatureProfile curvature_pilot(const TimeSeries& series,
                                 const AdaptiveConfig& config,
                                 const FrequencyGrid& grid);

/// Per-bin k_opt from S''/S = θ'' + θ'², followed by a moving median over
/// ±pilot_halfwidth.
std::vector<int> k_profile_from_curvature(const CurvatureProfile& profile,
                                          std::size_t n,
                                          const AdaptiveConfig& config);

/// At each bin, the fast sinusoidal estimate with that bin's K.
SpectralEstimate variable_k_estimate(const TimeSeries& series,
                                     std::span<const int> k_profile,
                                     WeightKind weight_kind,
                                     const FrequencyGrid& grid);

struct AdaptiveResult {
  SpectralEstimate estimate;       // log scale
  std::vector<double> halfwidths;  // variable_w: ŵ(f); variable_k: empty
  CurvatureProfile curvature;
};

/// Two-stage plug-in log-spectrum estimate (variable taper count or
/// variable kernel halfwidth).
AdaptiveResult two_stage_log_estimate(const TimeSeries& series,
                                      const AdaptiveConfig& config,
                                      const FrequencyGrid& grid);
AdaptiveResult two_stage_log_estimate(const TimeSeries& series,
                                      const AdaptiveConfig& config);

/// Σ (θ̂ - θ)² / m over the bins with 0 < f < 1/2.
double integrated_squared_log_error(std::span<const double> estimate,
                                    std::span<const double> truth,
                                    const FrequencyGrid& grid);

}  // namespace mtspec
