#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <vector>

namespace testing {

inline constexpr double pi = std::numbers::pi;

// Direct summation oracle: Σ_{n=1}^N v_n e^{-i2πnf}.
inline std::complex<double> direct_transform(std::span<const double> v, double f) {
  std::complex<double> acc = 0.0;
  for (std::size_t n = 0; n < v.size(); ++n) {
    acc += v[n] * std::polar(1.0, -2.0 * pi * static_cast<double>(n + 1) * f);
  }
  return acc;
}

inline std::vector<double> gaussian_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::vector<double> out(n);
  for (double& v : out) v = dist(rng);
  return out;
}

// Composite Simpson on [a, b] with an even number of intervals.
template <typename F>
double simpson(F&& f, double a, double b, std::size_t intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / static_cast<double>(intervals);
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < intervals; ++i) {
    acc += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
  }
  return acc * h / 3.0;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing
