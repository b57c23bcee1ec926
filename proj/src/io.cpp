#include "mtspec/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include "json.hpp"

#include "mtspec/error.hpp"
#include "mtspec/windows.hpp"

namespace mtspec::io {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Bins j = 0..m/2, i.e. f = j/m in [0, 1/2].
std::size_t half_band(const FrequencyGrid& grid) { return grid.size() / 2; }

double bin_frequency(const FrequencyGrid& grid, std::size_t j) {
  return static_cast<double>(j) / static_cast<double>(grid.size());
}

}  // namespace

std::string format_number(double value, int digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (digits >= 17) return fmt::format("{}", value);
  return fmt::format("{:.{}g}", value, digits);
}

std::vector<double> read_series(std::istream& in) {
  std::vector<double> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto text = trim(line);
    if (text.empty()) continue;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (*begin == '+') ++begin;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      throw ArgumentError("line " + std::to_string(number) + ": expected one finite number, got '" +
                          std::string(text) + "'");
    }
    out.push_back(v);
  }
  if (in.bad()) throw ArgumentError("read error after line " + std::to_string(number));
  return out;
}

std::vector<double> read_series_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open input file '" + path + "'");
  try {
    return read_series(in);
  } catch (const ArgumentError& e) {
    throw ArgumentError(path + ": " + e.what());
  }
}

void write_series(std::ostream& out, std::span<const double> samples) {
  for (double v : samples) out << format_number(v) << '\n';
}

void write_taper_csv(std::ostream& out, const TaperFamily& family) {
  out << 'n';
  for (std::size_t k = 1; k <= family.count(); ++k) out << ',' << k;
  out << '\n';
  for (std::size_t i = 0; i < family.length(); ++i) {
    out << i + 1;
    for (std::size_t k = 0; k < family.count(); ++k) out << ',' << format_number(family[k][i]);
    out << '\n';
  }
}

void write_local_bias_csv(std::ostream& out, const TaperFamily& family) {
  const double n1 = static_cast<double>(family.length() + 1);
  out << "k,local_bias,normalized_bias\n";
  for (std::size_t k = 0; k < family.count(); ++k) {
    const double lambda = family.local_biases[k];
    out << k + 1 << ',' << format_number(lambda) << ',' << format_number(4.0 * n1 * n1 * lambda) << '\n';
  }
}

void write_window_csv(std::ostream& out, const TaperFamily& family, const FrequencyGrid& grid) {
  std::vector<SpectralWindow> windows;
  windows.reserve(family.count());
  for (const auto& taper : family.tapers) windows.push_back(spectral_window(taper, grid));
  out << 'f';
  for (std::size_t k = 1; k <= family.count(); ++k) out << ',' << k;
  out << '\n';
  for (std::size_t j = 0; j <= half_band(grid); ++j) {
    out << format_number(bin_frequency(grid, j));
    for (const auto& w : windows) out << ',' << format_number(std::norm(w.values[j]));
    out << '\n';
  }
}

void write_estimate_csv(std::ostream& out, const SpectralEstimate& estimate, bool with_k) {
  out << (with_k ? "f,value,k_used\n" : "f,value\n");
  for (std::size_t j = 0; j <= half_band(estimate.grid); ++j) {
    out << format_number(bin_frequency(estimate.grid, j)) << ',' << format_number(estimate.values[j]);
    if (with_k) out << ',' << estimate.k_used[j];
    out << '\n';
  }
}

void write_estimate_json(std::ostream& out, const SpectralEstimate& estimate) {
  nlohmann::json doc;
  doc["scale"] = estimate.scale == Scale::log ? "log" : "linear";
  doc["weights"] = to_string(estimate.weight_kind);
  doc["grid_size"] = estimate.grid.size();
  auto& f = doc["f"] = nlohmann::json::array();
  auto& v = doc["value"] = nlohmann::json::array();
  auto& k = doc["k_used"] = nlohmann::json::array();
  for (std::size_t j = 0; j <= half_band(estimate.grid); ++j) {
    f.push_back(bin_frequency(estimate.grid, j));
    // JSON has no infinities; flagged bins carry null.
    if (std::isfinite(estimate.values[j])) {
      v.push_back(estimate.values[j]);
    } else {
      v.push_back(nullptr);
    }
    k.push_back(estimate.k_used[j]);
  }
  out << doc.dump(2) << '\n';
}

}  // namespace mtspec::io
