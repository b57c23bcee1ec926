#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "mtspec/estimator.hpp"
#include "mtspec/kernel.hpp"
#include "mtspec/table.hpp"
#include "mtspec/tapers.hpp"

namespace mtspec {

/// Modulation-invariant quadratic estimator
/// Ŝ(f) = Σ_{n,m} q_nm e^{i2π(m-n)f} x_n x_m with symmetric Q.
class QuadraticEstimator {
 public:
  explicit QuadraticEstimator(Eigen::MatrixXd q);

  std::size_t size() const noexcept { return static_cast<std::size_t>(q_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return q_; }
  double operator()(std::size_t n, std::size_t m) const { return q_(n, m); }

  /// Direct O(N²) evaluation at frequency f.
  double evaluate(const TimeSeries& series, double f) const;

 private:
  Eigen::MatrixXd q_;
};

/// q_nm = 1/N.
QuadraticEstimator periodogram_quadratic(std::size_t n);

/// q_nm = t_n t_m.
QuadraticEstimator tapered_quadratic(const Taper& taper);

/// q̃_nm = q_nm κ̂_{m-n}: kernel smoothing in frequency as a quadratic estimator.
QuadraticEstimator smooth_quadratic(const QuadraticEstimator& q,
                                    const KernelSpec& kernel, double w);

struct MultitaperDecomposition {
  std::vector<double> weights;  // eigenvalues μ_k, by decreasing |μ|; may be negative
  TaperFamily family;           // kind quadratic, λ_k = u_k A u_k
};

/// Eigenpairs of Q with |μ| > rank_tolerance · max|μ|.
MultitaperDecomposition quadratic_to_multitaper(const QuadraticEstimator& q,
                                                double rank_tolerance = 1e-10);

/// Tukey split-cosine taper: raised-cosine ramps over the first and last
/// p N / 2 samples and a flat centre, scaled to unit norm. 0 < p <= 1.
Taper split_cosine_taper(std::size_t n, double fraction);

/// Eigen-structure of a box-smoothed split-cosine periodogram: rows k with
/// (weight λ_k / tr, normalized local bias 4(N+1)² u_k A u_k, ratio to the
/// k-th minimum-bias eigenvalue).
ComparisonTable table4_experiment(std::size_t n = 200, double fraction = 0.2,
                                  KernelShape kernel = KernelShape::box,
                                  double w = 0.01, std::size_t rows = 7);

}  // namespace mtspec
