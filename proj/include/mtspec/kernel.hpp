#pragma once

#include <span>
#include <string>
#include <vector>

namespace mtspec {

enum class KernelShape { box, epanechnikov };

std::string to_string(KernelShape shape);
KernelShape parse_kernel_shape(const std::string& name);

/// Unit-mass symmetric kernel κ(u) on [-1, 1]. A halfwidth-w smoother uses
/// (1/w) κ(g/w).
///
/// bias_constant is ½ ∫ u² κ(u) du (the smoothed estimate has bias
/// bias_constant · w² · θ''), variance_constant is ∫ κ(u)² du (variance
/// ≈ variance_constant / (N w) per unit variance of the input).
struct KernelSpec {
  KernelShape shape;
  double bias_constant;
  double variance_constant;

  static KernelSpec box();
  static KernelSpec epanechnikov();
  static KernelSpec of(KernelShape shape);

  /// κ(u), zero outside [-1, 1].
  double operator()(double u) const;
};

/// κ̂_m = ∫_{-w}^{w} (1/w) κ(g/w) e^{2πimg} dg (closed forms).
double kernel_transfer(const KernelSpec& kernel, double w, long lag);

/// Circular discrete convolution of grid values with (1/w) κ(g/w); weights
/// are sampled at the bin offsets and renormalized to unit sum. Throws if w
/// is smaller than one grid step or above 1/2.
std::vector<double> kernel_smooth(std::span<const double> values,
                                  const KernelSpec& kernel, double w);

/// Same with a per-bin halfwidth (one entry per value).
std::vector<double> kernel_smooth_variable(std::span<const double> values,
                                           const KernelSpec& kernel,
                                           std::span<const double> halfwidths);

}  // namespace mtspec
