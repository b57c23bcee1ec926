#pragma once

#include <cstddef>

namespace mtspec {

/// ψ(x) for x > 0, absolute error below 1e-13.
double digamma(double x);

/// ψ'(x) for x > 0.
double trigamma(double x);

/// B_K = ψ(K) - ln K, the mean of ln(χ²_{2K} / 2K).
double log_bias_b(std::size_t k_count);

}  // namespace mtspec
