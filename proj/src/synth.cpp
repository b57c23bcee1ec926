#include "mtspec/synth.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "mtspec/error.hpp"

namespace mtspec {
namespace {

using std::numbers::pi;

struct ArResponse {
  std::complex<double> p, dp, d2p;  // P(f) = 1 - Σ a_j e^{-i2πjf} and its f-derivatives
};

ArResponse ar_response(const std::vector<double>& a, double f) {
  ArResponse r{1.0, 0.0, 0.0};
  for (std::size_t j = 1; j <= a.size(); ++j) {
    const double jd = static_cast<double>(j);
    const auto e = std::polar(1.0, -2.0 * pi * jd * f);
    r.p -= a[j - 1] * e;
    r.dp += a[j - 1] * std::complex<double>(0.0, 2.0 * pi * jd) * e;
    r.d2p += a[j - 1] * (4.0 * pi * pi * jd * jd) * e;
  }
  return r;
}

}  // namespace

GaussianStream::GaussianStream(std::uint64_t seed) : engine_(seed) {}

double GaussianStream::uniform_open() {
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform_open()));
  const double angle = 2.0 * pi * uniform_open();
  spare_ = r * std::sin(angle);
  has_spare_ = true;
  return r * std::cos(angle);
}

ProcessSpec ProcessSpec::white(double variance, std::uint64_t seed) {
  ProcessSpec spec{{}, variance, seed};
  spec.validate();
  return spec;
}

ProcessSpec ProcessSpec::autoregressive(std::vector<double> coefficients, double variance, std::uint64_t seed) {
  ProcessSpec spec{std::move(coefficients), variance, seed};
  spec.validate();
  return spec;
}

ProcessSpec ProcessSpec::ar2_peak(double radius, double f_peak, double variance, std::uint64_t seed) {
  if (!(radius >= 0.0 && radius < 1.0)) throw ArgumentError("ar2_peak: radius must lie in [0, 1)");
  if (!(f_peak >= 0.0 && f_peak <= 0.5)) throw ArgumentError("ar2_peak: peak frequency must lie in [0, 1/2]");
  return autoregressive({2.0 * radius * std::cos(2.0 * pi * f_peak), -radius * radius}, variance, seed);
}

double ProcessSpec::spectral_radius() const {
  // Trailing zero coefficients add roots at the origin only.
  std::size_t p = ar.size();
  while (p > 0 && ar[p - 1] == 0.0) --p;
  if (p == 0) return 0.0;
  const auto size = static_cast<Eigen::Index>(p);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index j = 0; j < size; ++j) companion(0, j) = ar[static_cast<std::size_t>(j)];
  for (Eigen::Index i = 1; i < size; ++i) companion(i, i - 1) = 1.0;
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw NumericalError("spectral_radius: eigenvalue solver failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

void ProcessSpec::validate() const {
  if (!(variance > 0.0) || !std::isfinite(variance)) throw ArgumentError("process: innovation variance must be positive");
  for (double a : ar) {
    if (!std::isfinite(a)) throw ArgumentError("process: AR coefficients must be finite");
  }
  const double rho = spectral_radius();
  if (!(rho < 1.0 - 1e-12)) {
    throw ArgumentError("process: AR polynomial has a root on or inside the unit circle (characteristic radius " +
                        std::to_string(rho) + ")");
  }
}

TimeSeries generate(const ProcessSpec& spec, std::size_t n) {
  spec.validate();
  if (n < 2) throw ArgumentError("generate: n must be >= 2");
  const double rho = spec.spectral_radius();
  std::size_t burn = spec.burn_in;
  if (rho > 0.0) {
    const double decay = -1.0 / std::log(rho);
    burn = std::max(burn, static_cast<std::size_t>(std::ceil(10.0 * decay)));
  }
  const double sigma = std::sqrt(spec.variance);
  const std::size_t p = spec.ar.size();
  const std::size_t total = burn + n;
  std::vector<double> x(total, 0.0);
  GaussianStream noise(spec.seed);
  for (std::size_t t = 0; t < total; ++t) {
    double v = sigma * noise.next();
    for (std::size_t j = 1; j <= p && j <= t; ++j) v += spec.ar[j - 1] * x[t - j];
    x[t] = v;
  }
  return TimeSeries(std::vector<double>(x.begin() + static_cast<long>(burn), x.end()));
}

SpectralEstimate true_spectrum(const ProcessSpec& spec, const FrequencyGrid& grid) {
  spec.validate();
  std::vector<double> s(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    s[j] = spec.variance / std::norm(ar_response(spec.ar, grid.frequency(j)).p);
  }
  return {grid, std::move(s), std::vector<int>(grid.size(), 0), WeightKind::custom, Scale::linear};
}

CurvatureProfile true_log_curvature(const ProcessSpec& spec, const FrequencyGrid& grid) {
  spec.validate();
  const std::size_t m = grid.size();
  std::vector<double> d2(m), d1(m), level(m);
  for (std::size_t j = 0; j < m; ++j) {
    // θ = ln σ² - 2 Re ln P
    const auto r = ar_response(spec.ar, grid.frequency(j));
    const auto g1 = r.dp / r.p;
    const auto g2 = r.d2p / r.p - g1 * g1;
    level[j] = std::log(spec.variance) - std::log(std::norm(r.p));
    d1[j] = -2.0 * g1.real();
    d2[j] = -2.0 * g2.real();
  }
  return {grid, std::move(d2), std::move(d1), std::move(level)};
}

std::vector<double> autocovariance(const ProcessSpec& spec, std::size_t max_lag) {
  spec.validate();
  const std::size_t p = spec.ar.size();
  // γ_k - Σ_j a_j γ_{|k-j|} = σ² δ_k, k = 0..p
  const auto size = static_cast<Eigen::Index>(p + 1);
  Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(size, size);
  for (std::size_t k = 0; k <= p; ++k) {
    for (std::size_t j = 1; j <= p; ++j) {
      const std::size_t lag = k > j ? k - j : j - k;
      lhs(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(lag)) -= spec.ar[j - 1];
    }
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(size);
  rhs(0) = spec.variance;
  const Eigen::VectorXd gamma = lhs.partialPivLu().solve(rhs);

  std::vector<double> out(max_lag + 1);
  for (std::size_t k = 0; k <= max_lag; ++k) {
    if (k <= p) {
      out[k] = gamma(static_cast<Eigen::Index>(k));
    } else {
      double v = 0.0;
      for (std::size_t j = 1; j <= p; ++j) v += spec.ar[j - 1] * out[k - j];
      out[k] = v;
    }
  }
  return out;
}

}  // namespace mtspec
