#include "mtspec/windows.hpp"

#include <cmath>
#include <numbers>

#include "mtspec/error.hpp"
#include "mtspec/fft.hpp"

namespace mtspec {
namespace {

using std::numbers::pi;
using namespace std::complex_literals;

// sin(Nπx) / sin(πx), continuous through the integers.
double dirichlet_ratio(std::size_t n, double x) {
  const double j = std::nearbyint(x);
  const double delta = x - j;
  const double nn = static_cast<double>(n);
  // (-1)^{(N-1) j}
  const bool odd = (static_cast<long long>(std::abs(j)) % 2 == 1) && (n % 2 == 0);
  const double sign = odd ? -1.0 : 1.0;
  if (std::abs(delta) < 1e-9) {
    return sign * nn * (1.0 - (nn * nn - 1.0) * pi * pi * delta * delta / 6.0);
  }
  return sign * std::sin(nn * pi * delta) / std::sin(pi * delta);
}

double sinc(double x) {
  const double px = pi * x;
  if (std::abs(px) < 1e-6) return 1.0 - px * px / 6.0;
  return std::sin(px) / px;
}

}  // namespace

double SpectralWindow::energy() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * grid.step();
}

SpectralWindow spectral_window(const Taper& taper, const FrequencyGrid& grid) {
  auto y = forward_transform(taper.values(), grid.size());
  const double m = static_cast<double>(grid.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    // Samples are indexed from n = 1, so every term carries one extra e^{-i2πf}.
    y[j] *= std::polar(1.0, -2.0 * pi * static_cast<double>(j) / m);
  }
  return {grid, std::move(y)};
}

std::complex<double> sinusoidal_window_closed(std::size_t n, std::size_t k, double f) {
  if (n < 1) throw ArgumentError("sinusoidal_window_closed: n must be >= 1");
  if (k < 1 || k > n) throw IndexError("sinusoidal_window_closed: k outside [1, n]");
  const double np1 = static_cast<double>(n + 1);
  const double kd = static_cast<double>(k);
  const double shift = kd / (2.0 * np1);
  const std::complex<double> prefactor =
      std::polar(1.0, -pi * (np1 * f - kd / 2.0)) / (1i * std::sqrt(2.0 * np1));
  const double parity = (k % 2 == 0) ? 1.0 : -1.0;
  return prefactor * (dirichlet_ratio(n, f - shift) - parity * dirichlet_ratio(n, f + shift));
}

std::complex<double> continuous_mb_window(std::size_t k, double f) {
  if (k < 1) throw IndexError("continuous_mb_window: k must be >= 1");
  const double half_k = static_cast<double>(k) / 2.0;
  const double parity = (k % 2 == 0) ? 1.0 : -1.0;
  const std::complex<double> prefactor = std::polar(1.0, -pi * (f - half_k)) / (1i * std::sqrt(2.0));
  return prefactor * (sinc(f - half_k) - parity * sinc(f + half_k));
}

}  // namespace mtspec
