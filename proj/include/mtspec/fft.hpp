#pragma once

#include <complex>
#include <span>
#include <vector>

namespace mtspec {

/// Zero-padded forward transform Y_j = Σ_{t=0}^{L-1} x_t e^{-i2π t j / m}
/// for j = 0..m-1. Inputs longer than m are folded modulo m first, so the
/// result is exact at the grid frequencies for any length.
std::vector<std::complex<double>> forward_transform(std::span<const double> x,
                                                    std::size_t m);

}  // namespace mtspec
