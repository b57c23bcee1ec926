#include "mtspec/special.hpp"

#include <cmath>

#include "mtspec/error.hpp"

namespace mtspec {

// Both functions shift the argument up to x >= 10 by recurrence and then
// sum the asymptotic (Bernoulli) series, whose truncation error there is
// below 1e-16.

double digamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ArgumentError("digamma: argument must be positive and finite");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  // 1/(12x²) - 1/(120x⁴) + 1/(252x⁶) - 1/(240x⁸) + 1/(132x¹⁰) - 691/(32760x¹²)
  const double series =
      r * (1.0 / 12 - r * (1.0 / 120 - r * (1.0 / 252 - r * (1.0 / 240 - r * (1.0 / 132 - r * 691.0 / 32760)))));
  return shift + std::log(x) - 0.5 / x - series;
}

double trigamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ArgumentError("trigamma: argument must be positive and finite");
  double shift = 0.0;
  while (x < 10.0) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  const double r = 1.0 / (x * x);
  // 1/x + 1/(2x²) + 1/(6x³) - 1/(30x⁵) + 1/(42x⁷) - 1/(30x⁹) + 5/(66x¹¹)
  const double series = (1.0 / x) * (1.0 + 0.5 / x + r * (1.0 / 6 - r * (1.0 / 30 - r * (1.0 / 42 - r * (1.0 / 30 - r * 5.0 / 66)))));
  return shift + series;
}

double log_bias_b(std::size_t k_count) {
  if (k_count < 1) throw ArgumentError("log_bias_b: K must be >= 1");
  const double k = static_cast<double>(k_count);
  return digamma(k) - std::log(k);
}

}  // namespace mtspec
