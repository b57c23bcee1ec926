#include "mtspec/estimator.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "mtspec/error.hpp"
#include "mtspec/fft.hpp"

namespace mtspec {
namespace {

using std::numbers::pi;

// Phase factor for 1-based time indexing: y(f_j) = e^{-i2πf_j} Y_j.
void apply_unit_offset(std::vector<std::complex<double>>& y) {
  const double m = static_cast<double>(y.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    y[j] *= std::polar(1.0, -2.0 * pi * static_cast<double>(j) / m);
  }
}

}  // namespace

TimeSeries::TimeSeries(std::vector<double> samples) : x_(std::move(samples)) {
  if (x_.size() < 2) throw ArgumentError("TimeSeries: need at least 2 samples");
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (!std::isfinite(x_[i])) throw ArgumentError("TimeSeries: sample " + std::to_string(i + 1) + " is not finite");
  }
}

std::string to_string(WeightKind kind) {
  switch (kind) {
    case WeightKind::uniform: return "uniform";
    case WeightKind::parabolic: return "parabolic";
    case WeightKind::custom: return "custom";
  }
  return "unknown";
}

WeightKind parse_weight_kind(const std::string& name) {
  if (name == "uniform") return WeightKind::uniform;
  if (name == "parabolic") return WeightKind::parabolic;
  throw ArgumentError("unknown weight scheme '" + name + "' (expected uniform or parabolic)");
}

WeightScheme::WeightScheme(WeightKind kind, std::vector<double> weights)
    : kind_(kind), mu_(std::move(weights)) {
  if (mu_.empty()) throw ArgumentError("WeightScheme: no weights");
  for (double m : mu_) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw ArgumentError("WeightScheme: weights must be finite and nonnegative");
  }
  const double total = std::accumulate(mu_.begin(), mu_.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw ArgumentError("WeightScheme: weights must sum to one");
}

double WeightScheme::sum_of_squares() const noexcept {
  double s = 0.0;
  for (double m : mu_) s += m * m;
  return s;
}

WeightScheme make_weights(WeightKind kind, std::size_t k_count) {
  if (k_count < 1) throw ArgumentError("make_weights: need at least one taper");
  const double kd = static_cast<double>(k_count);
  std::vector<double> mu(k_count, 1.0 / kd);
  if (kind == WeightKind::parabolic && k_count > 1) {
    double total = 0.0;
    for (std::size_t j = 1; j <= k_count; ++j) {
      const double jd = static_cast<double>(j);
      mu[j - 1] = 1.0 - jd * jd / (kd * kd);
      total += mu[j - 1];
    }
    for (double& m : mu) m /= total;
  } else if (kind == WeightKind::custom) {
    throw ArgumentError("make_weights: custom weights must be supplied explicitly");
  }
  return WeightScheme(kind, std::move(mu));
}

bool SpectralEstimate::is_flagged(std::size_t j) const {
  return grid.is_edge(j) || !std::isfinite(values[j]);
}

std::vector<std::complex<double>> dft(const TimeSeries& series, const FrequencyGrid& grid) {
  if (grid.size() < series.size()) {
    throw ArgumentError("dft: grid of " + std::to_string(grid.size()) + " points is shorter than the series");
  }
  auto y = forward_transform(series.samples(), grid.size());
  apply_unit_offset(y);
  return y;
}

SpectralEstimate multitaper_estimate(const TimeSeries& series, const TaperFamily& family,
                                     const WeightScheme& weights, const FrequencyGrid& grid) {
  const std::size_t n = series.size();
  if (family.length() != n) throw ArgumentError("multitaper_estimate: taper length differs from series length");
  if (weights.size() != family.count()) throw ArgumentError("multitaper_estimate: one weight per taper required");
  if (grid.size() < n) throw ArgumentError("multitaper_estimate: grid shorter than the series");

  std::vector<double> s(grid.size(), 0.0);
  std::vector<double> tapered(n);
  for (std::size_t k = 0; k < family.count(); ++k) {
    if (weights[k] == 0.0) continue;
    const auto v = family[k].values();
    for (std::size_t i = 0; i < n; ++i) tapered[i] = v[i] * series[i];
    // |e^{-i2πf} Y|² = |Y|², so the unit-offset phase is irrelevant here.
    const auto y = forward_transform(tapered, grid.size());
    for (std::size_t j = 0; j < y.size(); ++j) s[j] += weights[k] * std::norm(y[j]);
  }
  return {grid, std::move(s), std::vector<int>(grid.size(), static_cast<int>(family.count())), weights.kind(),
          Scale::linear};
}

SpectralEstimate sinusoidal_estimate_fast(const TimeSeries& series, const WeightScheme& weights,
                                          const FrequencyGrid& grid) {
  const std::size_t n = series.size();
  const std::size_t period = 2 * (n + 1);
  if (grid.size() % period != 0) {
    throw ArgumentError("sinusoidal_estimate_fast: grid size " + std::to_string(grid.size()) +
                        " must be a multiple of 2(N+1) = " + std::to_string(period));
  }
  if (weights.size() > n) throw ArgumentError("sinusoidal_estimate_fast: more tapers than samples");
  const std::size_t m = grid.size();
  const std::size_t shift = m / period;
  const auto y = dft(series, grid);
  const double norm = 1.0 / static_cast<double>(period);

  std::vector<double> s(m, 0.0);
  for (std::size_t k = 1; k <= weights.size(); ++k) {
    const double mu = weights[k - 1] * norm;
    if (mu == 0.0) continue;
    const std::size_t off = (k * shift) % m;
    for (std::size_t j = 0; j < m; ++j) {
      const std::size_t up = j + off >= m ? j + off - m : j + off;
      const std::size_t down = j >= off ? j - off : j + m - off;
      s[j] += mu * std::norm(y[up] - y[down]);
    }
  }
  return {grid, std::move(s), std::vector<int>(m, static_cast<int>(weights.size())), weights.kind(), Scale::linear};
}

double expected_square_error(double s, double s2, const WeightScheme& weights,
                             std::span<const double> local_biases) {
  if (local_biases.size() != weights.size()) {
    throw ArgumentError("expected_square_error: one local bias per weight required");
  }
  double bias = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) bias += local_biases[k] * weights[k];
  bias *= 0.5 * s2;
  return bias * bias + s * s * weights.sum_of_squares();
}

double k_opt_continuous(double s, double s2, std::size_t n) {
  if (!(s > 0.0)) throw ArgumentError("k_opt: spectrum value must be positive");
  if (std::abs(s2) < 1e-300 * s) return std::numeric_limits<double>::infinity();
  const double nd = static_cast<double>(n);
  return std::pow(12.0 * s * nd * nd / std::abs(s2), 0.4);
}

std::size_t k_opt(double s, double s2, std::size_t n, std::size_t k_min, std::size_t k_max) {
  if (n < 2) throw ArgumentError("k_opt: n must be >= 2");
  if (k_min < 1 || k_min > k_max || k_max > n) throw ArgumentError("k_opt: need 1 <= k_min <= k_max <= n");
  const double k = k_opt_continuous(s, s2, n);
  if (!(k < static_cast<double>(k_max))) return k_max;
  const double rounded = std::floor(k + 0.5);
  if (rounded < static_cast<double>(k_min)) return k_min;
  return std::min(k_max, static_cast<std::size_t>(rounded));
}

}  // namespace mtspec
