#include "mtspec/tapers.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mtspec/eigensolve.hpp"
#include "mtspec/error.hpp"
#include "mtspec/metrics.hpp"
#include "mtspec/toeplitz.hpp"

namespace mtspec {
namespace {

double squared_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

std::vector<Taper> columns_as_tapers(const Eigen::MatrixXd& vectors, std::size_t k_count) {
  std::vector<Taper> tapers;
  tapers.reserve(k_count);
  for (std::size_t k = 0; k < k_count; ++k) {
    const auto col = vectors.col(static_cast<Eigen::Index>(k));
    tapers.push_back(Taper::normalized(std::vector<double>(col.begin(), col.end())));
  }
  return tapers;
}

void check_count(std::size_t n, std::size_t k_count, const char* who) {
  if (n < 1) throw ArgumentError(std::string(who) + ": n must be >= 1");
  if (k_count < 1 || k_count > n) {
    throw IndexError(std::string(who) + ": taper count " + std::to_string(k_count) +
                     " outside [1, " + std::to_string(n) + "]");
  }
}

}  // namespace

Taper::Taper(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw ArgumentError("Taper: empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw ArgumentError("Taper: non-finite value");
  }
  if (std::abs(squared_norm(values_) - 1.0) > 1e-12) throw ArgumentError("Taper: values do not have unit norm");
}

Taper Taper::normalized(std::vector<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) throw ArgumentError("Taper: non-finite value");
  }
  const double norm = std::sqrt(squared_norm(values));
  if (!(norm > 0.0)) throw ArgumentError("Taper: cannot normalize a zero vector");
  for (double& v : values) v /= norm;
  return Taper(std::move(values));
}

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::sinusoidal: return "sinusoidal";
    case FamilyKind::minimum_bias: return "minimum_bias";
    case FamilyKind::slepian: return "slepian";
    case FamilyKind::quadratic: return "quadratic";
  }
  return "unknown";
}

TaperFamily::TaperFamily(FamilyKind kind, std::vector<Taper> tapers_in,
                         std::vector<double> local_biases_in,
                         std::optional<double> halfwidth_in,
                         std::vector<double> concentrations_in)
    : kind(kind),
      halfwidth(halfwidth_in),
      tapers(std::move(tapers_in)),
      local_biases(std::move(local_biases_in)),
      concentrations(std::move(concentrations_in)) {
  if (tapers.empty()) throw ArgumentError("TaperFamily: no tapers");
  if (local_biases.size() != tapers.size()) throw ArgumentError("TaperFamily: one local bias per taper required");
  if (!concentrations.empty() && concentrations.size() != tapers.size()) {
    throw ArgumentError("TaperFamily: one concentration per taper required");
  }
  const std::size_t n = tapers.front().size();
  if (tapers.size() > n) throw ArgumentError("TaperFamily: more tapers than samples");
  for (const auto& t : tapers) {
    if (t.size() != n) throw ArgumentError("TaperFamily: tapers differ in length");
  }
  if (orthonormality_defect(*this) > 1e-10) throw NumericalError("TaperFamily: tapers are not orthonormal to 1e-10");
  if (kind == FamilyKind::sinusoidal || kind == FamilyKind::minimum_bias) {
    for (std::size_t k = 1; k < local_biases.size(); ++k) {
      if (local_biases[k] < local_biases[k - 1]) throw NumericalError("TaperFamily: local biases must be nondecreasing");
    }
  }
}

double orthonormality_defect(const TaperFamily& family) {
  double worst = 0.0;
  const std::size_t k_count = family.count();
  for (std::size_t i = 0; i < k_count; ++i) {
    const auto a = family[i].values();
    for (std::size_t j = i; j < k_count; ++j) {
      const auto b = family[j].values();
      double dot = 0.0;
      for (std::size_t n = 0; n < a.size(); ++n) dot += a[n] * b[n];
      worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

Taper sinusoidal_taper(std::size_t n, std::size_t k) {
  if (n < 1) throw ArgumentError("sinusoidal_taper: n must be >= 1");
  if (k < 1 || k > n) {
    throw IndexError("sinusoidal_taper: index " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
  const double np1 = static_cast<double>(n + 1);
  const double scale = std::sqrt(2.0 / np1);
  std::vector<double> v(n);
  for (std::size_t i = 1; i <= n; ++i) {
    // Reduce k i modulo 2(N+1) so the sine argument stays small.
    const std::size_t r = (k * i) % (2 * (n + 1));
    v[i - 1] = scale * std::sin(std::numbers::pi * static_cast<double>(r) / np1);
  }
  return Taper(std::move(v));
}

TaperFamily sinusoidal_family(std::size_t n, std::size_t k_count) {
  check_count(n, k_count, "sinusoidal_family");
  const auto a = local_bias_matrix(n);
  std::vector<Taper> tapers;
  std::vector<double> biases;
  for (std::size_t k = 1; k <= k_count; ++k) {
    tapers.push_back(sinusoidal_taper(n, k));
    biases.push_back(local_bias(tapers.back().values(), a));
  }
  return TaperFamily(FamilyKind::sinusoidal, std::move(tapers), std::move(biases));
}

TaperFamily minimum_bias_family(std::size_t n, std::size_t k_count) {
  check_count(n, k_count, "minimum_bias_family");
  const auto pairs = symmetric_eigen(local_bias_matrix(n).to_dense(), EigenOrder::ascending);
  std::vector<double> biases(pairs.values.data(), pairs.values.data() + k_count);
  return TaperFamily(FamilyKind::minimum_bias, columns_as_tapers(pairs.vectors, k_count), std::move(biases));
}

TaperFamily slepian_family(std::size_t n, double w, std::size_t k_count) {
  check_count(n, k_count, "slepian_family");
  if (!(w > 0.0 && w < 0.5)) throw ArgumentError("slepian_family: halfwidth must lie in (0, 1/2)");

  // The tridiagonal matrix below commutes with the concentration matrix
  // B(w) and shares its eigenvectors, but its eigenvalues stay well
  // separated where those of B(w) cluster at 1 to machine precision.
  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::VectorXd diag(nn);
  Eigen::VectorXd sub(std::max<Eigen::Index>(nn - 1, 0));
  const double c = std::cos(2.0 * std::numbers::pi * w);
  for (Eigen::Index i = 0; i < nn; ++i) {
    const double x = (static_cast<double>(nn - 1) - 2.0 * static_cast<double>(i)) / 2.0;
    diag(i) = x * x * c;
  }
  for (Eigen::Index i = 1; i < nn; ++i) {
    sub(i - 1) = static_cast<double>(i) * static_cast<double>(nn - i) / 2.0;
  }
  const auto pairs = tridiagonal_eigen_partial(diag, sub, EigenOrder::descending, static_cast<Eigen::Index>(k_count));

  auto tapers = columns_as_tapers(pairs.vectors, k_count);
  const auto a = local_bias_matrix(n);
  const auto b = concentration_matrix(n, w);
  std::vector<double> biases;
  std::vector<double> conc;
  for (const auto& t : tapers) {
    biases.push_back(local_bias(t.values(), a));
    conc.push_back(b.quadratic_form(t.values()));
  }
  return TaperFamily(FamilyKind::slepian, std::move(tapers), std::move(biases), w, std::move(conc));
}

}  // namespace mtspec
