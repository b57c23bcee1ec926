#pragma once

#include <cstddef>
#include <span>

#include "mtspec/table.hpp"
#include "mtspec/tapers.hpp"
#include "mtspec/toeplitz.hpp"

namespace mtspec {

/// ∫ f² |V(f)|² df over [-1/2, 1/2], evaluated as the exact quadratic form ν A ν.
double local_bias(const Taper& taper);
double local_bias(std::span<const double> taper, const SymmetricToeplitz& a);

/// ∫_{-w}^{w} |V(f)|² df = ν B(w) ν. Requires 0 < w <= 1/2.
double concentration(const Taper& taper, double w);

struct ConvergenceStats {
  double l2;    // max_k (N+2)/k ||v_k - ν_k||_2
  double linf;  // max_k (N+2)/k ||v_k/|v_k|_∞ - ν_k/|ν_k|_∞||_∞
};

/// Distance between the sinusoidal and minimum-bias families over all
/// k = 1..N, after choosing the sign of each ν_k that minimizes the L2 gap.
ConvergenceStats convergence_distances(std::size_t n);

/// Rows N, columns l2 and linf.
ComparisonTable convergence_table(std::span<const std::size_t> ns);

/// Cumulative normalized bias 4(N+1)² Σ_{k<=K} λ_k for K = 1..k_max, one
/// column for each of: minimum bias, sinusoidal, Slepian at each halfwidth.
ComparisonTable bias_table(std::size_t n, std::size_t k_max,
                           std::span<const double> slepian_halfwidths);

/// Per-taper concentration in [-w, w] for k = 1..k_max: minimum bias,
/// sinusoidal and Slepian(w) columns.
ComparisonTable concentration_table(std::size_t n, double w, std::size_t k_max);

}  // namespace mtspec
