#include "mtspec/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mtspec/error.hpp"

namespace mtspec {
namespace {

using std::numbers::pi;

// Sampled (1/w)κ(g/w) at bin offsets -L..L, normalized to unit sum.
std::vector<double> kernel_weights(const KernelSpec& kernel, double w, std::size_t m) {
  const double width_bins = w * static_cast<double>(m);
  const auto half = static_cast<long>(std::floor(width_bins + 1e-9));
  std::vector<double> weights(static_cast<std::size_t>(2 * half + 1));
  double total = 0.0;
  for (long j = -half; j <= half; ++j) {
    const double u = std::min(1.0, std::abs(static_cast<double>(j)) / width_bins);
    const double value = kernel(u);
    weights[static_cast<std::size_t>(j + half)] = value;
    total += value;
  }
  for (double& v : weights) v /= total;
  return weights;
}

void check_halfwidth(double w, std::size_t m, const char* who) {
  if (!(w <= 0.5) || !(w * static_cast<double>(m) >= 1.0 - 1e-9)) {
    throw ArgumentError(std::string(who) + ": halfwidth " + std::to_string(w) +
                        " must lie between one grid step (" + std::to_string(1.0 / static_cast<double>(m)) +
                        ") and 1/2");
  }
}

double circular_dot(std::span<const double> values, std::span<const double> weights, std::size_t centre) {
  const std::size_t m = values.size();
  const std::size_t half = weights.size() / 2;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    // index centre + i - half, wrapped
    const std::size_t idx = (centre + i + m * (half / m + 1) - half) % m;
    acc += weights[i] * values[idx];
  }
  return acc;
}

}  // namespace

std::string to_string(KernelShape shape) {
  return shape == KernelShape::box ? "box" : "epanechnikov";
}

KernelShape parse_kernel_shape(const std::string& name) {
  if (name == "box") return KernelShape::box;
  if (name == "epanechnikov" || name == "parabolic") return KernelShape::epanechnikov;
  throw ArgumentError("unknown kernel '" + name + "' (expected box or epanechnikov)");
}

// ½∫u²κ and ∫κ² on [-1, 1]:
//   box κ = 1/2:               1/6, 1/2
//   Epanechnikov κ = ¾(1-u²):  1/10, 3/5
KernelSpec KernelSpec::box() { return {KernelShape::box, 1.0 / 6.0, 0.5}; }
KernelSpec KernelSpec::epanechnikov() { return {KernelShape::epanechnikov, 0.1, 0.6}; }
KernelSpec KernelSpec::of(KernelShape shape) {
  return shape == KernelShape::box ? box() : epanechnikov();
}

double KernelSpec::operator()(double u) const {
  if (std::abs(u) > 1.0) return 0.0;
  return shape == KernelShape::box ? 0.5 : 0.75 * (1.0 - u * u);
}

double kernel_transfer(const KernelSpec& kernel, double w, long lag) {
  if (!(w > 0.0 && w <= 0.5)) throw ArgumentError("kernel_transfer: halfwidth must lie in (0, 1/2]");
  const double x = 2.0 * pi * static_cast<double>(lag) * w;
  if (kernel.shape == KernelShape::box) {
    if (std::abs(x) < 1e-4) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
  }
  // (3/4)∫_{-1}^{1}(1-u²)cos(xu)du = 3(sin x - x cos x)/x³
  if (std::abs(x) < 1e-3) return 1.0 - x * x / 10.0 + x * x * x * x / 280.0;
  return 3.0 * (std::sin(x) - x * std::cos(x)) / (x * x * x);
}

std::vector<double> kernel_smooth(std::span<const double> values, const KernelSpec& kernel, double w) {
  const std::size_t m = values.size();
  if (m < 2) throw ArgumentError("kernel_smooth: need at least 2 grid values");
  check_halfwidth(w, m, "kernel_smooth");
  const auto weights = kernel_weights(kernel, w, m);
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = circular_dot(values, weights, j);
  return out;
}

std::vector<double> kernel_smooth_variable(std::span<const double> values, const KernelSpec& kernel,
                                           std::span<const double> halfwidths) {
  const std::size_t m = values.size();
  if (halfwidths.size() != m) throw ArgumentError("kernel_smooth_variable: one halfwidth per grid value required");
  std::vector<double> out(m);
  for (std::size_t j = 0; j < m; ++j) {
    check_halfwidth(halfwidths[j], m, "kernel_smooth_variable");
    out[j] = circular_dot(values, kernel_weights(kernel, halfwidths[j], m), j);
  }
  return out;
}

}  // namespace mtspec
