#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mtspec/estimator.hpp"
#include "mtspec/tapers.hpp"

namespace mtspec::io {

/// Headerless CSV, one finite decimal per line (blank lines ignored).
/// Throws ArgumentError with the offending line number.
std::vector<double> read_series(std::istream& in);
std::vector<double> read_series_file(const std::string& path);

/// One sample per line.
void write_series(std::ostream& out, std::span<const double> samples);

/// Header `n,1,2,...,K`, then one row per sample index n = 1..N.
void write_taper_csv(std::ostream& out, const TaperFamily& family);

/// Header `k,local_bias,normalized_bias` with normalized = 4(N+1)² λ_k.
void write_local_bias_csv(std::ostream& out, const TaperFamily& family);

/// Header `f,1,...,K` with |V_k(f)|² for grid frequencies in [0, 1/2].
void write_window_csv(std::ostream& out, const TaperFamily& family,
                      const FrequencyGrid& grid);

/// `f,value[,k_used]` for grid frequencies in [0, 1/2].
void write_estimate_csv(std::ostream& out, const SpectralEstimate& estimate,
                        bool with_k);

/// JSON object with metadata (scale, weights, grid size, K) and f/value arrays.
void write_estimate_json(std::ostream& out, const SpectralEstimate& estimate);

std::string format_number(double value, int digits = 17);

}  // namespace mtspec::io
