#include "mtspec/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "mtspec/eigensolve.hpp"
#include "mtspec/error.hpp"
#include "mtspec/toeplitz.hpp"

namespace mtspec {

QuadraticEstimator::QuadraticEstimator(Eigen::MatrixXd q) : q_(std::move(q)) {
  if (q_.rows() == 0 || q_.rows() != q_.cols()) throw ArgumentError("QuadraticEstimator: matrix must be square and nonempty");
  if (!q_.allFinite()) throw ArgumentError("QuadraticEstimator: matrix has non-finite entries");
  const double scale = std::max(1.0, q_.cwiseAbs().maxCoeff());
  if ((q_ - q_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ArgumentError("QuadraticEstimator: matrix must be symmetric");
  }
}

double QuadraticEstimator::evaluate(const TimeSeries& series, double f) const {
  if (series.size() != size()) throw ArgumentError("QuadraticEstimator::evaluate: series length differs from matrix size");
  // Σ_{n,m} q_nm e^{i2π(m-n)f} x_n x_m = Re(z^H Q z) with z_n = x_n e^{i2π n f}.
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::VectorXcd z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    z(i) = std::polar(series[static_cast<std::size_t>(i)], 2.0 * std::numbers::pi * static_cast<double>(i + 1) * f);
  }
  return (z.adjoint() * (q_.cast<std::complex<double>>() * z))(0).real();
}

QuadraticEstimator periodogram_quadratic(std::size_t n) {
  if (n < 1) throw ArgumentError("periodogram_quadratic: n must be >= 1");
  const auto size = static_cast<Eigen::Index>(n);
  return QuadraticEstimator(Eigen::MatrixXd::Constant(size, size, 1.0 / static_cast<double>(n)));
}

QuadraticEstimator tapered_quadratic(const Taper& taper) {
  const auto v = taper.values();
  const Eigen::Map<const Eigen::VectorXd> t(v.data(), static_cast<Eigen::Index>(v.size()));
  return QuadraticEstimator(t * t.transpose());
}

QuadraticEstimator smooth_quadratic(const QuadraticEstimator& q, const KernelSpec& kernel, double w) {
  const auto n = static_cast<Eigen::Index>(q.size());
  std::vector<double> transfer(static_cast<std::size_t>(n));
  for (Eigen::Index d = 0; d < n; ++d) transfer[static_cast<std::size_t>(d)] = kernel_transfer(kernel, w, d);
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i, j) = q(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) *
                  transfer[static_cast<std::size_t>(std::abs(j - i))];
    }
  }
  return QuadraticEstimator(std::move(out));
}

MultitaperDecomposition quadratic_to_multitaper(const QuadraticEstimator& q, double rank_tolerance) {
  if (!(rank_tolerance >= 0.0 && rank_tolerance < 1.0)) {
    throw ArgumentError("quadratic_to_multitaper: rank tolerance must lie in [0, 1)");
  }
  const auto pairs = symmetric_eigen(q.matrix(), EigenOrder::descending);
  const auto count = static_cast<std::size_t>(pairs.values.size());
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(pairs.values(static_cast<Eigen::Index>(a))) > std::abs(pairs.values(static_cast<Eigen::Index>(b)));
  });
  const double largest = std::abs(pairs.values(static_cast<Eigen::Index>(order.front())));
  if (largest == 0.0) throw ArgumentError("quadratic_to_multitaper: zero matrix has no tapers");

  const auto a = local_bias_matrix(q.size());
  std::vector<double> weights;
  std::vector<Taper> tapers;
  std::vector<double> biases;
  for (std::size_t idx : order) {
    const double mu = pairs.values(static_cast<Eigen::Index>(idx));
    if (std::abs(mu) <= rank_tolerance * largest) break;
    const Eigen::VectorXd col = pairs.vectors.col(static_cast<Eigen::Index>(idx));
    std::vector<double> u(col.data(), col.data() + col.size());
    biases.push_back(a.quadratic_form(u));
    tapers.push_back(Taper::normalized(std::move(u)));
    weights.push_back(mu);
  }
  return {std::move(weights), TaperFamily(FamilyKind::quadratic, std::move(tapers), std::move(biases))};
}

Taper split_cosine_taper(std::size_t n, double fraction) {
  if (n < 1) throw ArgumentError("split_cosine_taper: n must be >= 1");
  if (!(fraction > 0.0 && fraction <= 1.0)) throw ArgumentError("split_cosine_taper: fraction must lie in (0, 1]");
  const double nd = static_cast<double>(n);
  const double ramp = fraction * nd / 2.0;
  std::vector<double> t(n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    // distance of the sample centre from the nearer end
    const double x = std::min(static_cast<double>(i) + 0.5, nd - static_cast<double>(i) - 0.5);
    if (x < ramp) t[i] = 0.5 * (1.0 - std::cos(std::numbers::pi * x / ramp));
  }
  return Taper::normalized(std::move(t));
}

ComparisonTable table4_experiment(std::size_t n, double fraction, KernelShape kernel, double w, std::size_t rows) {
  if (rows < 1 || rows > n) throw ArgumentError("table4_experiment: rows must lie in [1, n]");
  const auto smoothed = smooth_quadratic(tapered_quadratic(split_cosine_taper(n, fraction)), KernelSpec::of(kernel), w);
  const double trace = smoothed.matrix().trace();
  const auto pairs = symmetric_eigen(smoothed.matrix(), EigenOrder::descending);
  const auto a = local_bias_matrix(n);
  const auto mb = symmetric_eigen(a.to_dense(), EigenOrder::ascending);
  const double scale = 4.0 * static_cast<double>((n + 1) * (n + 1));

  ComparisonTable table("k", {"weight", "normalized_bias", "ratio_to_minimum_bias"});
  for (std::size_t k = 0; k < rows; ++k) {
    const auto idx = static_cast<Eigen::Index>(k);
    const Eigen::VectorXd col = pairs.vectors.col(idx);
    const double bias = a.quadratic_form(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())));
    table.add_row(std::to_string(k + 1), {pairs.values(idx) / trace, scale * bias, bias / mb.values(idx)});
  }
  return table;
}

}  // namespace mtspec
