#include "catch_amalgamated.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "mtspec/error.hpp"
#include "mtspec/quadratic.hpp"
#include "mtspec/toeplitz.hpp"
#include "support.hpp"

using Catch::Approx;
using namespace mtspec;

namespace {

double tapered_periodogram(std::span<const double> x, std::span<const double> taper, double f) {
  std::vector<double> prod(x.size());
  for (std::size_t n = 0; n < x.size(); ++n) prod[n] = x[n] * taper[n];
  return std::norm(testing::direct_transform(prod, f));
}

Eigen::MatrixXd random_symmetric(std::size_t n, std::uint64_t seed) {
  const auto g = testing::gaussian_vector(n * n, seed);
  const Eigen::Map<const Eigen::MatrixXd> m(g.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  return 0.5 * (m + m.transpose());
}

}  // namespace

TEST_CASE("periodogram as a quadratic estimator", "[quadratic]") {
  const auto p2 = periodogram_quadratic(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) CHECK(p2(i, j) == 0.5);
  }
  const std::size_t n = 37;
  const TimeSeries series(testing::gaussian_vector(n, 4));
  const auto p = periodogram_quadratic(n);
  for (double f : {0.0, 0.013, 0.2, 0.5, -0.31}) {
    const double ref = std::norm(testing::direct_transform(series.samples(), f)) / static_cast<double>(n);
    CHECK(p.evaluate(series, f) == Approx(ref).epsilon(1e-12));
  }
  const auto d = quadratic_to_multitaper(p);
  REQUIRE(d.weights.size() == 1);
  CHECK(d.weights[0] == Approx(1.0).epsilon(1e-12));
  for (double v : d.family[0].values()) CHECK(std::abs(v) == Approx(1.0 / std::sqrt(37.0)).epsilon(1e-12));

  const auto uniform = tapered_quadratic(Taper::normalized(std::vector<double>(n, 1.0)));
  CHECK((uniform.matrix() - p.matrix()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(periodogram_quadratic(0), ArgumentError);
}

TEST_CASE("tapered periodogram", "[quadratic]") {
  const auto t = sinusoidal_taper(40, 1);
  const auto q = tapered_quadratic(t);
  CHECK(q.matrix().trace() == Approx(1.0).epsilon(1e-14));
  const TimeSeries series(testing::gaussian_vector(40, 8));
  CHECK(q.evaluate(series, 0.123) == Approx(tapered_periodogram(series.samples(), t.values(), 0.123)).epsilon(1e-12));

  const auto sc = tapered_quadratic(split_cosine_taper(200, 0.2));
  const auto d = quadratic_to_multitaper(sc);
  REQUIRE(d.weights.size() == 1);
  CHECK(d.weights[0] == Approx(1.0).epsilon(1e-12));
  const auto ref = split_cosine_taper(200, 0.2);
  double dot = 0.0;
  for (std::size_t i = 0; i < 200; ++i) dot += ref[i] * d.family[0][i];
  CHECK(std::abs(dot) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("quadratic estimator validation", "[quadratic]") {
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(3, 3);
  q(0, 1) = 0.5;
  CHECK_THROWS_AS(QuadraticEstimator(q), ArgumentError);
  CHECK_THROWS_AS(QuadraticEstimator(Eigen::MatrixXd::Zero(2, 3)), ArgumentError);
  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
  bad(1, 1) = NAN;
  CHECK_THROWS_AS(QuadraticEstimator(bad), ArgumentError);
}

TEST_CASE("kernel smoothing of quadratic estimators", "[quadratic][smoothing]") {
  const auto epa = KernelSpec::epanechnikov();
  SECTION("diagonal is unchanged") {
    const auto q = QuadraticEstimator(random_symmetric(12, 3));
    const auto s = smooth_quadratic(q, KernelSpec::box(), 0.07);
    for (std::size_t i = 0; i < 12; ++i) CHECK(s(i, i) == q(i, i));
    CHECK((s.matrix() - s.matrix().transpose()).cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("smoothed periodogram in the frequency domain") {
    // Ŝ̃(f) = ∫ κ_w(g) Ŝ(f - g) dg, checked by quadrature on the periodogram
    const std::size_t n = 16;
    const TimeSeries series(testing::gaussian_vector(n, 12));
    const double w = 0.05;
    const auto s = smooth_quadratic(periodogram_quadratic(n), epa, w);
    for (double f : {0.0, 0.1, 0.37}) {
      const double ref = testing::simpson(
          [&](double g) {
            return epa(g / w) / w * std::norm(testing::direct_transform(series.samples(), f - g)) /
                   static_cast<double>(n);
          },
          -w, w, 4000);
      CHECK(s.evaluate(series, f) == Approx(ref).epsilon(1e-9));
    }
  }

  SECTION("Epanechnikov over the full band gives the minimum-bias matrix") {
    for (std::size_t n : {8u, 50u, 200u}) {
      const auto s = smooth_quadratic(periodogram_quadratic(n), epa, 0.5);
      const Eigen::MatrixXd a = local_bias_matrix(n).to_dense();
      const Eigen::MatrixXd expected =
          (1.5 * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) - 6.0 * a) /
          static_cast<double>(n);
      CHECK((s.matrix() - expected).cwiseAbs().maxCoeff() < 1e-12);
      for (std::size_t i = 0; i < n; ++i) CHECK(s(i, i) == Approx(1.0 / static_cast<double>(n)).epsilon(1e-13));

      const auto d = quadratic_to_multitaper(s);
      REQUIRE(d.weights.size() == n);
      const auto mb = minimum_bias_family(n, n);
      for (std::size_t k = 0; k < n; ++k) {
        const double expected_mu = (1.5 - 6.0 * mb.local_biases[k]) / static_cast<double>(n);
        CHECK(d.weights[k] == Approx(expected_mu).epsilon(1e-10));
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += d.family[k][i] * mb[k][i];
        CHECK(std::abs(dot) > 1.0 - 1e-8);
        CHECK(d.family.local_biases[k] == Approx(mb.local_biases[k]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("multitaper decomposition", "[quadratic][decomposition]") {
  SECTION("trace identity for random symmetric matrices") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Eigen::MatrixXd m = random_symmetric(20, seed);
      const auto d = quadratic_to_multitaper(QuadraticEstimator(m));
      double sum = 0.0;
      for (double mu : d.weights) sum += mu;
      CHECK(sum == Approx(m.trace()).margin(1e-10));
      for (std::size_t k = 1; k < d.weights.size(); ++k) CHECK(std::abs(d.weights[k]) <= std::abs(d.weights[k - 1]));
    }
  }

  SECTION("reconstruction within the rank tolerance") {
    const auto q = smooth_quadratic(tapered_quadratic(split_cosine_taper(60, 0.3)), KernelSpec::box(), 0.05);
    for (double tol : {1e-10, 1e-4, 1e-2}) {
      const auto d = quadratic_to_multitaper(q, tol);
      Eigen::MatrixXd r = q.matrix();
      for (std::size_t k = 0; k < d.weights.size(); ++k) {
        const auto v = d.family[k].values();
        const Eigen::Map<const Eigen::VectorXd> u(v.data(), static_cast<Eigen::Index>(v.size()));
        r -= d.weights[k] * u * u.transpose();
      }
      CHECK(r.norm() <= tol * q.matrix().norm());
    }
    CHECK_THROWS_AS(quadratic_to_multitaper(q, -1.0), ArgumentError);
  }

  SECTION("round trip at random frequencies") {
    const std::size_t n = 48;
    const auto q = smooth_quadratic(tapered_quadratic(split_cosine_taper(n, 0.2)), KernelSpec::epanechnikov(), 0.04);
    const auto d = quadratic_to_multitaper(q, 1e-14);
    const TimeSeries series(testing::gaussian_vector(n, 77));
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uf(-0.5, 0.5);
    for (int i = 0; i < 64; ++i) {
      const double f = uf(rng);
      double sum = 0.0;
      for (std::size_t k = 0; k < d.weights.size(); ++k) {
        sum += d.weights[k] * tapered_periodogram(series.samples(), d.family[k].values(), f);
      }
      const double direct = q.evaluate(series, f);
      CHECK(sum == Approx(direct).epsilon(1e-10).margin(1e-12));
    }
  }

  SECTION("no smoothed estimator beats the minimum-bias bound") {
    const std::size_t n = 40;
    const Eigen::MatrixXd a = local_bias_matrix(n).to_dense();
    Eigen::VectorXd lambda = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues();  // ascending
    for (double w : {0.01, 0.05, 0.2}) {
      for (const auto& kernel : {KernelSpec::box(), KernelSpec::epanechnikov()}) {
        const auto q = smooth_quadratic(tapered_quadratic(split_cosine_taper(n, 0.5)), kernel, w);
        const auto d = quadratic_to_multitaper(q, 0.0);
        double functional = 0.0;
        std::vector<double> mu(n, 0.0);
        for (std::size_t k = 0; k < d.weights.size(); ++k) {
          functional += d.weights[k] * d.family.local_biases[k];
          mu[k] = d.weights[k];
        }
        std::sort(mu.begin(), mu.end(), std::greater<>());
        double bound = 0.0;
        for (std::size_t k = 0; k < n; ++k) bound += mu[k] * lambda(static_cast<Eigen::Index>(k));
        CHECK(functional == Approx((q.matrix() * a).trace()).epsilon(1e-9));
        CHECK(functional >= bound - 1e-12);
      }
    }
  }
}

TEST_CASE("split-cosine taper", "[quadratic][taper]") {
  SECTION("unit fraction is a Hann taper") {
    const std::size_t n = 32;
    const auto t = split_cosine_taper(n, 1.0);
    std::vector<double> hann(n);
    for (std::size_t i = 0; i < n; ++i) {
      hann[i] = 0.5 * (1.0 - std::cos(2.0 * testing::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(n)));
    }
    const auto ref = Taper::normalized(hann);
    CHECK(testing::max_abs_diff(t.values(), ref.values()) < 1e-14);
  }

  SECTION("small fraction is nearly uniform") {
    const auto t = split_cosine_taper(100, 1e-6);
    for (double v : t.values()) CHECK(v == Approx(0.1).epsilon(1e-12));
  }

  SECTION("shape at n = 200, p = 0.2") {
    const auto t = split_cosine_taper(200, 0.2);
    double norm = 0.0;
    for (double v : t.values()) norm += v * v;
    CHECK(norm == Approx(1.0).epsilon(1e-14));
    for (std::size_t i = 1; i < 20; ++i) CHECK(t[i] > t[i - 1]);
    for (std::size_t i = 20; i < 180; ++i) CHECK(t[i] == t[100]);
    for (std::size_t i = 0; i < 200; ++i) CHECK(t[i] == t[199 - i]);
  }

  CHECK_THROWS_AS(split_cosine_taper(10, 0.0), ArgumentError);
  CHECK_THROWS_AS(split_cosine_taper(10, 1.5), ArgumentError);
}

TEST_CASE("eigen-structure of a smoothed split-cosine periodogram", "[quadratic][table]") {
  const auto t = table4_experiment();
  REQUIRE(t.rows() == 7);
  REQUIRE(t.columns() == 3);
  double top4 = 0.0;
  for (std::size_t k = 0; k < 4; ++k) top4 += t.at(k, 0);
  CHECK(top4 >= 0.95);
  CHECK(t.at(5, 0) <= 0.02);
  for (std::size_t k = 0; k < 7; ++k) {
    CHECK(t.at(k, 2) >= 1.0 - 1e-9);
    if (k > 0) CHECK(t.at(k, 0) <= t.at(k - 1, 0));
  }
  const double weight[] = {.2856, .2828, .2519, .1416, .0340, .0037, .0002};
  const double bias[] = {1.5138, 4.7371, 9.6254, 19.2095, 33.7118, 51.3616, 72.9747};
  const double ratio[] = {1.509, 1.181, 1.067, 1.198, 1.345, 1.423, 1.486};
  for (std::size_t k = 0; k < 7; ++k) {
    CHECK(t.at(k, 0) == Approx(weight[k]).margin(1e-4));
    CHECK(t.at(k, 1) == Approx(bias[k]).epsilon(1e-3));
    CHECK(t.at(k, 2) == Approx(ratio[k]).margin(1e-3));
  }
}
