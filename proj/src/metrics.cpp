#include "mtspec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "mtspec/error.hpp"

namespace mtspec {
namespace {

std::string format_halfwidth(double w) {
  std::string s = std::to_string(w);
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  return s;
}

}  // namespace

double local_bias(const Taper& taper) {
  return local_bias(taper.values(), local_bias_matrix(taper.size()));
}

double local_bias(std::span<const double> taper, const SymmetricToeplitz& a) {
  return a.quadratic_form(taper);
}

double concentration(const Taper& taper, double w) {
  return concentration_matrix(taper.size(), w).quadratic_form(taper.values());
}

ConvergenceStats convergence_distances(std::size_t n) {
  if (n < 2) throw ArgumentError("convergence_distances: n must be >= 2");
  const auto sine = sinusoidal_family(n, n);
  const auto mb = minimum_bias_family(n, n);
  const double scale = static_cast<double>(n + 2);

  ConvergenceStats stats{0.0, 0.0};
  for (std::size_t k = 0; k < n; ++k) {
    const auto v = sine[k].values();
    const auto nu = mb[k].values();
    double minus = 0.0;
    double plus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      minus += (v[i] - nu[i]) * (v[i] - nu[i]);
      plus += (v[i] + nu[i]) * (v[i] + nu[i]);
    }
    const double sign = plus < minus ? -1.0 : 1.0;
    const double factor = scale / static_cast<double>(k + 1);
    stats.l2 = std::max(stats.l2, factor * std::sqrt(std::min(plus, minus)));

    double v_max = 0.0;
    double nu_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      v_max = std::max(v_max, std::abs(v[i]));
      nu_max = std::max(nu_max, std::abs(nu[i]));
    }
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sup = std::max(sup, std::abs(v[i] / v_max - sign * nu[i] / nu_max));
    }
    stats.linf = std::max(stats.linf, factor * sup);
  }
  return stats;
}

ComparisonTable convergence_table(std::span<const std::size_t> ns) {
  ComparisonTable table("N", {"l2", "linf"});
  for (std::size_t n : ns) {
    const auto s = convergence_distances(n);
    table.add_row(std::to_string(n), {s.l2, s.linf});
  }
  return table;
}

ComparisonTable bias_table(std::size_t n, std::size_t k_max, std::span<const double> slepian_halfwidths) {
  if (k_max < 1 || k_max > n) throw ArgumentError("bias_table: k_max must lie in [1, n]");
  std::vector<std::string> columns{"minimum_bias", "sinusoidal"};
  std::vector<TaperFamily> families{minimum_bias_family(n, k_max), sinusoidal_family(n, k_max)};
  for (double w : slepian_halfwidths) {
    columns.push_back("slepian_w=" + format_halfwidth(w));
    families.push_back(slepian_family(n, w, k_max));
  }
  const double norm = 4.0 * static_cast<double>(n + 1) * static_cast<double>(n + 1);
  ComparisonTable table("K", columns);
  std::vector<double> running(families.size(), 0.0);
  for (std::size_t k = 0; k < k_max; ++k) {
    std::vector<double> row;
    for (std::size_t f = 0; f < families.size(); ++f) {
      running[f] += families[f].local_biases[k];
      row.push_back(norm * running[f]);
    }
    table.add_row(std::to_string(k + 1), std::move(row));
  }
  return table;
}

ComparisonTable concentration_table(std::size_t n, double w, std::size_t k_max) {
  if (k_max < 1 || k_max > n) throw ArgumentError("concentration_table: k_max must lie in [1, n]");
  const auto b = concentration_matrix(n, w);
  const auto mb = minimum_bias_family(n, k_max);
  const auto sine = sinusoidal_family(n, k_max);
  // Slepian tapers are undefined at w = 1/2, where every unit taper has
  // concentration one; report that directly.
  const bool full_band = w >= 0.5;
  const auto slep = full_band ? std::optional<TaperFamily>{} : std::optional{slepian_family(n, w, k_max)};
  ComparisonTable table("k", {"minimum_bias", "sinusoidal", "slepian"});
  for (std::size_t k = 0; k < k_max; ++k) {
    table.add_row(std::to_string(k + 1),
                  {b.quadratic_form(mb[k].values()), b.quadratic_form(sine[k].values()),
                   full_band ? 1.0 : slep->concentrations[k]});
  }
  return table;
}

}  // namespace mtspec
