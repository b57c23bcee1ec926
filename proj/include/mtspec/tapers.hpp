#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace mtspec {

/// Unit-norm data taper v_1..v_N (unit sampling interval).
class Taper {
 public:
  /// Takes values that already have unit norm (to 1e-12); throws otherwise.
  explicit Taper(std::vector<double> values);

  /// Scales arbitrary nonzero finite values to unit norm.
  static Taper normalized(std::vector<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  std::vector<double> values_;
};

enum class FamilyKind { sinusoidal, minimum_bias, slepian, quadratic };

std::string to_string(FamilyKind kind);

/// Ordered orthonormal taper family with per-taper local bias λ_k
/// (squared cycles/sample). For slepian families `halfwidth` holds w and
/// `concentrations` holds ν B(w) ν.
struct TaperFamily {
  FamilyKind kind;
  std::optional<double> halfwidth;
  std::vector<Taper> tapers;
  std::vector<double> local_biases;
  std::vector<double> concentrations;

  TaperFamily(FamilyKind kind, std::vector<Taper> tapers,
              std::vector<double> local_biases,
              std::optional<double> halfwidth = std::nullopt,
              std::vector<double> concentrations = {});

  std::size_t length() const noexcept { return tapers.front().size(); }
  std::size_t count() const noexcept { return tapers.size(); }
  const Taper& operator[](std::size_t k) const { return tapers[k]; }
};

/// k-th sinusoidal taper, v_n = sqrt(2/(N+1)) sin(π k n / (N+1)), k = 1..N.
Taper sinusoidal_taper(std::size_t n, std::size_t k);

/// Tapers 1..K of the sinusoidal family with their exact local biases.
TaperFamily sinusoidal_family(std::size_t n, std::size_t k_count);

/// The K eigenvectors of the local-bias matrix with smallest eigenvalues.
TaperFamily minimum_bias_family(std::size_t n, std::size_t k_count);

/// The K discrete prolate spheroidal sequences for halfwidth w, in order of
/// decreasing concentration. Requires 0 < w < 1/2.
TaperFamily slepian_family(std::size_t n, double w, std::size_t k_count);

/// Max |⟨u_i, u_j⟩ - δ_ij| over the family.
double orthonormality_defect(const TaperFamily& family);

}  // namespace mtspec
