#include "catch_amalgamated.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "mtspec/error.hpp"
#include "mtspec/estimator.hpp"
#include "mtspec/tapers.hpp"
#include "support.hpp"

using Catch::Approx;
using namespace mtspec;
using testing::pi;

namespace {

double max_relative_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double scale = 0.0;
  for (double v : b) scale = std::max(scale, std::abs(v));
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, std::abs(a[j] - b[j]) / scale);
  return worst;
}

}  // namespace

TEST_CASE("time series validation", "[estimator]") {
  CHECK_THROWS_AS(TimeSeries({1.0}), ArgumentError);
  CHECK_THROWS_AS(TimeSeries({1.0, INFINITY}), ArgumentError);
  CHECK(TimeSeries({1.0, 2.0}).size() == 2);
}

TEST_CASE("dft uses one-based time indexing", "[estimator][dft]") {
  const FrequencyGrid grid(16);
  std::vector<double> impulse(8, 0.0);
  impulse[0] = 1.0;
  const auto y = dft(TimeSeries(impulse), grid);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    CHECK(std::abs(y[j] - std::polar(1.0, -2.0 * pi * grid.frequency(j))) < 1e-14);
  }
  const auto ones = dft(TimeSeries(std::vector<double>(8, 1.0)), grid);
  CHECK(ones[0].real() == Approx(8.0));

  const auto x = testing::gaussian_vector(50, 9);
  const FrequencyGrid g2(128);
  const auto yx = dft(TimeSeries(x), g2);
  for (std::size_t j = 0; j < g2.size(); ++j) {
    const auto ref = testing::direct_transform(x, g2.frequency(j));
    CHECK(std::abs(yx[j] - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
  }
  CHECK_THROWS_AS(dft(TimeSeries(x), FrequencyGrid(40)), ArgumentError);
}

TEST_CASE("weight schemes", "[estimator][weights]") {
  const auto u = make_weights(WeightKind::uniform, 4);
  for (double m : u.weights()) CHECK(m == 0.25);
  const auto p = make_weights(WeightKind::parabolic, 3);
  CHECK(p[0] == Approx(8.0 / 13.0).epsilon(1e-15));
  CHECK(p[1] == Approx(5.0 / 13.0).epsilon(1e-15));
  CHECK(p[2] == 0.0);
  const auto p1 = make_weights(WeightKind::parabolic, 1);
  CHECK(p1.size() == 1);
  CHECK(p1[0] == 1.0);
  CHECK(u.sum_of_squares() == Approx(0.25));
  CHECK_THROWS_AS(make_weights(WeightKind::uniform, 0), ArgumentError);
  CHECK_THROWS_AS(make_weights(WeightKind::custom, 3), ArgumentError);
  CHECK_THROWS_AS(WeightScheme(WeightKind::custom, {0.5, 0.6}), ArgumentError);
  CHECK_THROWS_AS(WeightScheme(WeightKind::custom, {1.5, -0.5}), ArgumentError);
  CHECK(parse_weight_kind("parabolic") == WeightKind::parabolic);
  CHECK_THROWS_AS(parse_weight_kind("triangular"), ArgumentError);
}

TEST_CASE("multitaper estimate reductions", "[estimator]") {
  const auto x = testing::gaussian_vector(32, 4);
  const TimeSeries series(x);
  const FrequencyGrid grid(64);

  SECTION("uniform taper gives the periodogram") {
    const auto taper = Taper::normalized(std::vector<double>(32, 1.0));
    const TaperFamily family(FamilyKind::quadratic, {taper}, {0.0});
    const auto est = multitaper_estimate(series, family, make_weights(WeightKind::uniform, 1), grid);
    const auto y = dft(series, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) CHECK(est.values[j] == Approx(std::norm(y[j]) / 32.0).epsilon(1e-12));
  }

  SECTION("dimension mismatches") {
    const auto family = sinusoidal_family(32, 4);
    CHECK_THROWS_AS(multitaper_estimate(series, family, make_weights(WeightKind::uniform, 3), grid), ArgumentError);
    CHECK_THROWS_AS(multitaper_estimate(TimeSeries(testing::gaussian_vector(31, 1)), family,
                                        make_weights(WeightKind::uniform, 4), grid),
                    ArgumentError);
  }

  SECTION("edge bins are flagged") {
    const auto est = multitaper_estimate(series, sinusoidal_family(32, 3), make_weights(WeightKind::uniform, 3), grid);
    CHECK(est.is_flagged(0));
    CHECK(est.is_flagged(32));
    CHECK_FALSE(est.is_flagged(5));
    for (double v : est.values) CHECK(v >= 0.0);
    CHECK(est.scale == Scale::linear);
    CHECK(est.k_used[3] == 3);
  }
}

TEST_CASE("fast sinusoidal path equals the generic path", "[estimator][fast]") {
  std::uint64_t seed = 100;
  for (std::size_t n : {16u, 64u, 128u}) {
    const auto grid = FrequencyGrid::for_estimation(n);
    for (std::size_t k : {std::size_t{1}, std::size_t{4}, n / 2}) {
      for (WeightKind kind : {WeightKind::uniform, WeightKind::parabolic}) {
        const TimeSeries series(testing::gaussian_vector(n, ++seed));
        const auto w = make_weights(kind, k);
        const auto fast = sinusoidal_estimate_fast(series, w, grid);
        const auto generic = multitaper_estimate(series, sinusoidal_family(n, k), w, grid);
        CHECK(max_relative_gap(fast.values, generic.values) < 1e-10);
      }
    }
  }

  SECTION("single taper as a difference of two shifted transforms") {
    const std::size_t n = 20;
    const TimeSeries series(testing::gaussian_vector(n, 77));
    const auto grid = FrequencyGrid::for_estimation(n);
    const auto fast = sinusoidal_estimate_fast(series, make_weights(WeightKind::uniform, 1), grid);
    const double shift = 1.0 / (2.0 * (n + 1));
    for (std::size_t j = 0; j < grid.size(); j += 7) {
      const double f = grid.frequency(j);
      const auto d = testing::direct_transform(series.samples(), f + shift) -
                     testing::direct_transform(series.samples(), f - shift);
      CHECK(fast.values[j] == Approx(std::norm(d) / (2.0 * (n + 1))).epsilon(1e-10));
    }
  }

  SECTION("constant series") {
    const std::size_t n = 40;
    const TimeSeries series(std::vector<double>(n, 3.0));
    const auto grid = FrequencyGrid::for_estimation(n);
    const auto w = make_weights(WeightKind::uniform, 5);
    const auto fast = sinusoidal_estimate_fast(series, w, grid);
    const auto generic = multitaper_estimate(series, sinusoidal_family(n, 5), w, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) CHECK(fast.values[j] == Approx(generic.values[j]).margin(1e-10));
  }

  SECTION("misaligned grid names the required multiple") {
    const TimeSeries series(testing::gaussian_vector(10, 1));
    CHECK_THROWS_WITH(sinusoidal_estimate_fast(series, make_weights(WeightKind::uniform, 2), FrequencyGrid(40)),
                      Catch::Matchers::ContainsSubstring("2(N+1) = 22"));
  }
}

TEST_CASE("expected square error", "[estimator][loss]") {
  const auto w = make_weights(WeightKind::uniform, 6);
  const std::vector<double> lambda{0.1, 0.2, 0.3, 0.4, 0.5, 0.6};
  CHECK(expected_square_error(2.0, 0.0, w, lambda) == Approx(4.0 / 6.0));

  std::vector<double> sine(6);
  for (std::size_t k = 1; k <= 6; ++k) sine[k - 1] = static_cast<double>(k * k) / (4.0 * 100.0);
  // ½ s2 Σ λ μ = 6 · (91/6) / 400 = 91/400, so the bias term is (91/400)².
  CHECK(expected_square_error(1.0, 12.0, w, sine) == Approx(std::pow(91.0 / 400.0, 2) + 1.0 / 6.0).epsilon(1e-14));

  SECTION("asymptotic loss at the optimal taper count") {
    const double n = 1e4;
    const std::size_t k = 100;
    const double s2 = 12000.0;  // k_opt(1, s2, 1e4) = 100
    std::vector<double> lam(k);
    for (std::size_t j = 1; j <= k; ++j) lam[j - 1] = static_cast<double>(j * j) / (4.0 * n * n);
    const double exact = expected_square_error(1.0, s2, make_weights(WeightKind::uniform, k), lam);
    const double asymptotic = std::pow(s2 * k * k / (24.0 * n * n), 2) + 1.0 / static_cast<double>(k);
    CHECK(exact == Approx(asymptotic).epsilon(0.01));
    CHECK(k_opt(1.0, s2, 10000, 1, 10000) == 100);
  }

  CHECK_THROWS_AS(expected_square_error(1.0, 1.0, w, std::vector<double>(5, 0.1)), ArgumentError);
}

TEST_CASE("optimal taper count", "[estimator][kopt]") {
  CHECK(k_opt(1.0, 12.0, 10, 1, 10) == 6);
  CHECK(k_opt(1.0, -12.0, 10, 1, 10) == 6);
  CHECK(k_opt(1.0, 0.0, 10, 1, 7) == 7);
  CHECK(k_opt(1.0, 12.0, 100, 1, 100) == 40);
  CHECK(k_opt(1.0, 12.0, 100, 1, 30) == 30);
  CHECK(k_opt(1.0, 1e12, 100, 3, 30) == 3);
  CHECK(k_opt_continuous(1.0, 12.0, 10) == Approx(6.3096).epsilon(1e-4));
  CHECK(std::isinf(k_opt_continuous(1.0, 0.0, 10)));
  CHECK_THROWS_AS(k_opt(0.0, 1.0, 10, 1, 5), ArgumentError);
  CHECK_THROWS_AS(k_opt(1.0, 1.0, 10, 6, 5), ArgumentError);
  CHECK_THROWS_AS(k_opt(1.0, 1.0, 10, 1, 11), ArgumentError);

  SECTION("homogeneity in (s, s2)") {
    for (double c : {0.01, 3.0, 1e6}) CHECK(k_opt(c * 2.0, c * 50.0, 500, 1, 500) == k_opt(2.0, 50.0, 500, 1, 500));
  }

  SECTION("integer minimizer of the sinusoidal loss is within one of k_opt") {
    const std::size_t n = 400;
    for (double s2 : {5.0, 50.0, 500.0, 5000.0}) {
      std::size_t best = 1;
      double best_loss = INFINITY;
      for (std::size_t k = 1; k <= n / 2; ++k) {
        std::vector<double> lam(k);
        for (std::size_t j = 1; j <= k; ++j) {
          lam[j - 1] = static_cast<double>(j * j) / (4.0 * static_cast<double>(n * n));
        }
        const double loss = expected_square_error(1.0, s2, make_weights(WeightKind::uniform, k), lam);
        if (loss < best_loss) {
          best_loss = loss;
          best = k;
        }
      }
      const auto rounded = k_opt(1.0, s2, n, 1, n);
      if (rounded < n / 2) CHECK(std::abs(static_cast<double>(best) - static_cast<double>(rounded)) <= 1.0);
    }
  }
}

TEST_CASE("white-noise mean and variance", "[estimator][montecarlo]") {
  const std::size_t n = 128, k = 8, reps = 400;
  const auto grid = FrequencyGrid::for_estimation(n);
  const auto w = make_weights(WeightKind::uniform, k);
  std::vector<double> sum(grid.size(), 0.0), sum2(grid.size(), 0.0);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto est = sinusoidal_estimate_fast(TimeSeries(testing::gaussian_vector(n, 5000 + r)), w, grid);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      sum[j] += est.values[j];
      sum2[j] += est.values[j] * est.values[j];
    }
  }
  double mean = 0.0, var = 0.0;
  std::size_t count = 0;
  for (std::size_t j = 1; 2 * j < grid.size(); ++j) {
    const double f = grid.frequency(j);
    if (f < 0.05 || f > 0.45) continue;
    const double m = sum[j] / reps;
    mean += m;
    var += sum2[j] / reps - m * m;
    ++count;
  }
  mean /= static_cast<double>(count);
  var /= static_cast<double>(count);
  CHECK(mean == Approx(1.0).margin(0.02));
  CHECK(var == Approx(1.0 / k).epsilon(0.1));
}
