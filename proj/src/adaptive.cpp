#include "mtspec/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "mtspec/error.hpp"
#include "mtspec/special.hpp"

namespace mtspec {
namespace {

std::size_t wrap(long j, std::size_t m) {
  const long mm = static_cast<long>(m);
  return static_cast<std::size_t>(((j % mm) + mm) % mm);
}

// Circular moving median over ±half bins.
std::vector<int> moving_median(const std::vector<int>& k, std::size_t half) {
  const std::size_t m = k.size();
  std::vector<int> out(m);
  std::vector<int> window(2 * half + 1);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < window.size(); ++i) {
      window[i] = k[wrap(static_cast<long>(j + i) - static_cast<long>(half), m)];
    }
    auto mid = window.begin() + static_cast<long>(half);
    std::nth_element(window.begin(), mid, window.end());
    out[j] = *mid;
  }
  return out;
}

}  // namespace

std::string to_string(AdaptiveMode mode) {
  return mode == AdaptiveMode::variable_k ? "variable_k" : "variable_w";
}

AdaptiveMode parse_adaptive_mode(const std::string& name) {
  if (name == "variable_k" || name == "k") return AdaptiveMode::variable_k;
  if (name == "variable_w" || name == "w") return AdaptiveMode::variable_w;
  throw ArgumentError("unknown adaptive mode '" + name + "' (expected variable_k or variable_w)");
}

std::string to_string(LogCorrection correction) {
  return correction == LogCorrection::full ? "full" : "literal";
}

LogCorrection parse_log_correction(const std::string& name) {
  if (name == "full") return LogCorrection::full;
  if (name == "literal") return LogCorrection::literal;
  throw ArgumentError("unknown log correction '" + name + "' (expected full or literal)");
}

double log_correction(std::size_t k_count, LogCorrection correction) {
  const double b = log_bias_b(k_count);
  return correction == LogCorrection::full ? b : b / static_cast<double>(k_count);
}

AdaptiveConfig AdaptiveConfig::defaults(std::size_t n) {
  if (n < 2) throw ArgumentError("AdaptiveConfig: n must be >= 2");
  const double nd = static_cast<double>(n);
  AdaptiveConfig c{};
  c.pilot_k = std::min(n, static_cast<std::size_t>(std::ceil(std::pow(nd, 8.0 / 15.0) - 1e-9)));
  c.k_min = std::min<std::size_t>(4, c.pilot_k);
  c.k_max = std::min(n, std::max(c.pilot_k, static_cast<std::size_t>(std::ceil(nd / 4.0))));
  c.pilot_halfwidth = std::min(0.5, static_cast<double>(c.pilot_k) / (nd + 1.0));
  return c;
}

void AdaptiveConfig::validate(std::size_t n) const {
  if (k_min < 1 || k_min > pilot_k || pilot_k > k_max || k_max > n) {
    throw ArgumentError("adaptive: need 1 <= k_min (" + std::to_string(k_min) + ") <= pilot_k (" +
                        std::to_string(pilot_k) + ") <= k_max (" + std::to_string(k_max) + ") <= N (" +
                        std::to_string(n) + ")");
  }
  if (!(pilot_halfwidth > 0.0 && pilot_halfwidth <= 0.5)) {
    throw ArgumentError("adaptive: pilot halfwidth must lie in (0, 1/2]");
  }
  if (derivative_step < 1) throw ArgumentError("adaptive: derivative step must be >= 1 bin");
}

SpectralEstimate log_multitaper(const TimeSeries& series, std::size_t k_count, const FrequencyGrid& grid,
                                LogCorrection correction) {
  auto est = sinusoidal_estimate_fast(series, make_weights(WeightKind::uniform, k_count), grid);
  const double b = log_correction(k_count, correction);
  for (double& v : est.values) {
    v = v > 0.0 ? std::log(v) - b : -std::numeric_limits<double>::infinity();
  }
  est.scale = Scale::log;
  return est;
}

double w_opt(double theta2, std::size_t n, std::size_t k_count, const KernelSpec& kernel, std::size_t grid_size) {
  if (n < 2 || k_count < 1 || grid_size < 8) throw ArgumentError("w_opt: need n >= 2, K >= 1 and grid >= 8");
  if (!std::isfinite(theta2)) throw ArgumentError("w_opt: curvature must be finite");
  const double lo = 2.0 / static_cast<double>(grid_size);
  const double hi = 0.25;
  const double t2 = theta2 * theta2;
  if (t2 == 0.0) return hi;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(k_count);
  const double b = kernel.bias_constant;
  const double c = kd * kd / (24.0 * nd * nd);
  const double inflation = 1.0 + 1.0 / (2.0 * kd);
  const double rhs = kernel.variance_constant * inflation * inflation / nd;
  // Stationarity: 4 b θ''² w³ (b w² + c) = C'/N; the left side increases in w.
  auto lhs = [&](double w) { return 4.0 * b * t2 * w * w * w * (b * w * w + c); };
  if (lhs(lo) >= rhs) return lo;
  if (lhs(hi) <= rhs) return hi;
  double a = lo, z = hi;
  for (int it = 0; it < 200 && z - a > 1e-15; ++it) {
    const double mid = 0.5 * (a + z);
    (lhs(mid) < rhs ? a : z) = mid;
  }
  return 0.5 * (a + z);
}

double w_opt_closed_form(double theta2, std::size_t n, std::size_t k_count, const KernelSpec& kernel) {
  if (theta2 == 0.0) return std::numeric_limits<double>::infinity();
  const double kd = static_cast<double>(k_count);
  const double inflation = 1.0 + 1.0 / (2.0 * kd);
  const double b = kernel.bias_constant;
  return std::pow(kernel.variance_constant * inflation * inflation /
                      (4.0 * b * b * theta2 * theta2 * static_cast<double>(n)),
                  0.2);
}

CurvatureProfile curvature_pilot(const TimeSeries& series, const AdaptiveConfig& config,
                                 const FrequencyGrid& grid) {
  config.validate(series.size());
  auto pilot = log_multitaper(series, config.pilot_k, grid, config.correction);
  double floor_value = std::numeric_limits<double>::infinity();
  for (double v : pilot.values) {
    if (std::isfinite(v)) floor_value = std::min(floor_value, v);
  }
  if (!std::isfinite(floor_value)) throw NumericalError("adaptive: pilot estimate is zero at every frequency");
  for (double& v : pilot.values) {
    if (!std::isfinite(v)) v = floor_value;
  }

  const std::size_t m = grid.size();
  auto level = kernel_smooth(pilot.values, KernelSpec::of(config.kernel), config.pilot_halfwidth);
  const long st = static_cast<long>(config.derivative_step);
  const double h = static_cast<double>(st) / static_cast<double>(m);
  std::vector<double> d1(m), d2(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double up = level[wrap(static_cast<long>(j) + st, m)];
    const double down = level[wrap(static_cast<long>(j) - st, m)];
    d1[j] = (up - down) / (2.0 * h);
    d2[j] = (up - 2.0 * level[j] + down) / (h * h);
  }
  return {grid, std::move(d2), std::move(d1), std::move(level)};
}

std::vector<int> k_profile_from_curvature(const CurvatureProfile& profile, std::size_t n,
                                          const AdaptiveConfig& config) {
  const std::size_t m = profile.grid.size();
  std::vector<int> k(m);
  for (std::size_t j = 0; j < m; ++j) {
    // S''/S = θ'' + θ'², so with S = e^θ only the ratio matters.
    const double slope = profile.slope[j];
    const double ratio = profile.values[j] + slope * slope;
    k[j] = static_cast<int>(k_opt(1.0, ratio, n, config.k_min, config.k_max));
  }
  const auto half = static_cast<std::size_t>(std::floor(config.pilot_halfwidth * static_cast<double>(m) + 1e-9));
  if (half == 0) return k;
  return moving_median(k, std::min(half, (m - 1) / 2));
}

SpectralEstimate variable_k_estimate(const TimeSeries& series, std::span<const int> k_profile,
                                     WeightKind weight_kind, const FrequencyGrid& grid) {
  const std::size_t n = series.size();
  const std::size_t m = grid.size();
  const std::size_t period = 2 * (n + 1);
  if (k_profile.size() != m) throw ArgumentError("variable_k_estimate: one taper count per grid point required");
  if (m % period != 0) {
    throw ArgumentError("variable_k_estimate: grid size " + std::to_string(m) + " must be a multiple of 2(N+1) = " +
                        std::to_string(period));
  }
  for (int k : k_profile) {
    if (k < 1 || static_cast<std::size_t>(k) > n) throw ArgumentError("variable_k_estimate: taper counts must lie in [1, N]");
  }
  const auto y = dft(series, grid);
  const std::size_t shift = m / period;
  const double norm = 1.0 / static_cast<double>(period);
  std::map<int, WeightScheme> schemes;
  std::vector<double> s(m);
  for (std::size_t j = 0; j < m; ++j) {
    const int kj = k_profile[j];
    auto it = schemes.find(kj);
    if (it == schemes.end()) it = schemes.emplace(kj, make_weights(weight_kind, static_cast<std::size_t>(kj))).first;
    const WeightScheme& mu = it->second;
    double acc = 0.0;
    for (int k = 1; k <= kj; ++k) {
      const long off = static_cast<long>(static_cast<std::size_t>(k) * shift);
      acc += mu[static_cast<std::size_t>(k - 1)] *
             std::norm(y[wrap(static_cast<long>(j) + off, m)] - y[wrap(static_cast<long>(j) - off, m)]);
    }
    s[j] = acc * norm;
  }
  return {grid, std::move(s), std::vector<int>(k_profile.begin(), k_profile.end()), weight_kind, Scale::linear};
}

AdaptiveResult two_stage_log_estimate(const TimeSeries& series, const AdaptiveConfig& config,
                                      const FrequencyGrid& grid) {
  const std::size_t n = series.size();
  auto profile = curvature_pilot(series, config, grid);
  const std::size_t m = grid.size();

  if (config.mode == AdaptiveMode::variable_k) {
    const auto k = k_profile_from_curvature(profile, n, config);
    auto est = variable_k_estimate(series, k, WeightKind::uniform, grid);
    for (std::size_t j = 0; j < m; ++j) {
      const double v = est.values[j];
      est.values[j] = v > 0.0 ? std::log(v) - log_correction(static_cast<std::size_t>(k[j]), config.correction)
                              : -std::numeric_limits<double>::infinity();
    }
    est.scale = Scale::log;
    return {std::move(est), {}, std::move(profile)};
  }

  const KernelSpec kernel = KernelSpec::of(config.kernel);
  auto pilot = log_multitaper(series, config.pilot_k, grid, config.correction);
  double floor_value = std::numeric_limits<double>::infinity();
  for (double v : pilot.values) {
    if (std::isfinite(v)) floor_value = std::min(floor_value, v);
  }
  for (double& v : pilot.values) {
    if (!std::isfinite(v)) v = floor_value;
  }
  std::vector<double> widths(m);
  for (std::size_t j = 0; j < m; ++j) widths[j] = w_opt(profile.values[j], n, config.pilot_k, kernel, m);
  pilot.values = kernel_smooth_variable(pilot.values, kernel, widths);
  return {std::move(pilot), std::move(widths), std::move(profile)};
}

AdaptiveResult two_stage_log_estimate(const TimeSeries& series, const AdaptiveConfig& config) {
  return two_stage_log_estimate(series, config, FrequencyGrid::for_estimation(series.size()));
}

double integrated_squared_log_error(std::span<const double> estimate, std::span<const double> truth,
                                    const FrequencyGrid& grid) {
  const std::size_t m = grid.size();
  if (estimate.size() != m || truth.size() != m) {
    throw ArgumentError("integrated_squared_log_error: both inputs need one value per grid point");
  }
  double total = 0.0;
  for (std::size_t j = 1; 2 * j < m; ++j) {
    const double d = estimate[j] - truth[j];
    total += d * d;
  }
  return total / static_cast<double>(m);
}

}  // namespace mtspec
