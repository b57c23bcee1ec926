#include "mtspec/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mtspec/adaptive.hpp"
#include "mtspec/error.hpp"
#include "mtspec/estimator.hpp"
#include "mtspec/io.hpp"
#include "mtspec/metrics.hpp"
#include "mtspec/quadratic.hpp"
#include "mtspec/special.hpp"
#include "mtspec/synth.hpp"
#include "mtspec/tapers.hpp"

namespace mtspec::cli {
namespace {

constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;

// "-" or empty means the caller's stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ArgumentError("cannot open output file '" + path + "'");
    stream_ = file_.get();
  }
  ~Output() {
    if (!file_) stream_->flush();
  }
  std::ostream& operator*() { return *stream_; }
  void close() {
    stream_->flush();
    if (!*stream_) throw ArgumentError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

TimeSeries load_series(const std::string& path) {
  if (path == "-") return TimeSeries(io::read_series(std::cin));
  return TimeSeries(io::read_series_file(path));
}

FamilyKind parse_family(const std::string& name) {
  if (name == "sine" || name == "sinusoidal") return FamilyKind::sinusoidal;
  if (name == "mb" || name == "minimum_bias") return FamilyKind::minimum_bias;
  if (name == "slepian") return FamilyKind::slepian;
  throw ArgumentError("unknown taper family '" + name + "' (expected sine, mb or slepian)");
}

std::string family_label(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::sinusoidal: return "sine";
    case FamilyKind::minimum_bias: return "mb";
    case FamilyKind::slepian: return "slepian";
    case FamilyKind::quadratic: return "quadratic";
  }
  return "unknown";
}

TaperFamily make_family(FamilyKind kind, std::size_t n, std::size_t k, std::optional<double> w) {
  switch (kind) {
    case FamilyKind::sinusoidal: return sinusoidal_family(n, k);
    case FamilyKind::minimum_bias: return minimum_bias_family(n, k);
    case FamilyKind::slepian:
      if (!w) throw ArgumentError("the slepian family needs --w");
      return slepian_family(n, *w, k);
    default: break;
  }
  throw ArgumentError("unsupported taper family");
}

// Equivalent-degrees-of-freedom log correction: B at K_eff = 1/Σμ², which is
// K itself for uniform weights.
double weighted_log_correction(const WeightScheme& weights, LogCorrection correction) {
  const double k_eff = 1.0 / weights.sum_of_squares();
  const double b = digamma(k_eff) - std::log(k_eff);
  return correction == LogCorrection::full ? b : b / k_eff;
}

void to_log(SpectralEstimate& est, double correction) {
  for (double& v : est.values) v = v > 0.0 ? std::log(v) - correction : -INFINITY;
  est.scale = Scale::log;
}

FrequencyGrid pick_grid(std::size_t grid_size, std::size_t n) {
  return grid_size == 0 ? FrequencyGrid::for_estimation(n) : FrequencyGrid(grid_size);
}

SpectralEstimate fixed_estimate(const TimeSeries& series, FamilyKind kind, std::size_t k, std::optional<double> w,
                                const WeightScheme& weights, const FrequencyGrid& grid, bool generic) {
  const std::size_t n = series.size();
  if (kind == FamilyKind::sinusoidal && !generic && grid.size() % (2 * (n + 1)) == 0) {
    return sinusoidal_estimate_fast(series, weights, grid);
  }
  return multitaper_estimate(series, make_family(kind, n, k, w), weights, grid);
}

// ---------------------------------------------------------------- tapers

struct TapersOptions {
  std::string family = "sine";
  std::size_t n = 0;
  std::size_t k = 4;
  std::optional<double> w;
  std::string out = "-";
  std::string window_out;
  std::string bias_out;
  std::size_t grid = 0;
};

void cmd_tapers(const TapersOptions& o, std::ostream& out) {
  const auto family = make_family(parse_family(o.family), o.n, o.k, o.w);
  Output taper_out(o.out, out);
  io::write_taper_csv(*taper_out, family);
  taper_out.close();
  if (!o.window_out.empty()) {
    Output window_out(o.window_out, out);
    io::write_window_csv(*window_out, family, o.grid == 0 ? FrequencyGrid::for_window(o.n) : FrequencyGrid(o.grid));
    window_out.close();
  }
  if (!o.bias_out.empty()) {
    Output bias_out(o.bias_out, out);
    io::write_local_bias_csv(*bias_out, family);
    bias_out.close();
  }
}

// ---------------------------------------------------------------- estimate

struct EstimateOptions {
  std::string input;
  std::size_t k = 8;
  std::string weights = "uniform";
  std::string family = "sine";
  std::optional<double> w;
  std::size_t grid = 0;
  bool generic = false;
  bool log = false;
  std::string correction = "full";
  std::string out = "-";
  bool json = false;
};

void cmd_estimate(const EstimateOptions& o, std::ostream& out) {
  const auto series = load_series(o.input);
  const auto weights = make_weights(parse_weight_kind(o.weights), o.k);
  const auto grid = pick_grid(o.grid, series.size());
  auto est = fixed_estimate(series, parse_family(o.family), o.k, o.w, weights, grid, o.generic);
  if (o.log) to_log(est, weighted_log_correction(weights, parse_log_correction(o.correction)));
  Output dest(o.out, out);
  if (o.json) {
    io::write_estimate_json(*dest, est);
  } else {
    io::write_estimate_csv(*dest, est, false);
  }
  dest.close();
}

// ---------------------------------------------------------------- adaptive

struct AdaptiveOptions {
  std::string input;
  std::optional<std::size_t> pilot_k, k_min, k_max;
  std::optional<double> pilot_halfwidth;
  std::string mode = "variable_k";
  std::string kernel = "epanechnikov";
  std::string correction = "full";
  std::size_t derivative_step = 3;
  std::size_t grid = 0;
  std::string out = "-";
  std::string profile_out;
  bool json = false;
};

void cmd_adaptive(const AdaptiveOptions& o, std::ostream& out) {
  const auto series = load_series(o.input);
  const std::size_t n = series.size();
  auto config = AdaptiveConfig::defaults(n);
  if (o.pilot_k) {
    config.pilot_k = *o.pilot_k;
    if (!o.pilot_halfwidth) config.pilot_halfwidth = std::min(0.5, static_cast<double>(*o.pilot_k) / static_cast<double>(n + 1));
  }
  if (o.k_min) config.k_min = *o.k_min;
  if (o.k_max) config.k_max = *o.k_max;
  if (o.pilot_halfwidth) config.pilot_halfwidth = *o.pilot_halfwidth;
  config.mode = parse_adaptive_mode(o.mode);
  config.kernel = parse_kernel_shape(o.kernel);
  config.correction = parse_log_correction(o.correction);
  config.derivative_step = o.derivative_step;
  config.validate(n);

  const auto result = two_stage_log_estimate(series, config, pick_grid(o.grid, n));
  Output dest(o.out, out);
  if (o.json) {
    io::write_estimate_json(*dest, result.estimate);
  } else {
    io::write_estimate_csv(*dest, result.estimate, true);
  }
  dest.close();

  if (!o.profile_out.empty()) {
    Output prof(o.profile_out, out);
    const auto& c = result.curvature;
    const bool widths = !result.halfwidths.empty();
    *prof << (widths ? "f,level,slope,curvature,halfwidth\n" : "f,level,slope,curvature,k_used\n");
    const std::size_t m = c.grid.size();
    for (std::size_t j = 0; 2 * j <= m; ++j) {
      *prof << io::format_number(static_cast<double>(j) / static_cast<double>(m)) << ','
            << io::format_number(c.level[j]) << ',' << io::format_number(c.slope[j]) << ','
            << io::format_number(c.values[j]) << ','
            << (widths ? io::format_number(result.halfwidths[j]) : std::to_string(result.estimate.k_used[j])) << '\n';
    }
    prof.close();
  }
}

// ---------------------------------------------------------------- tables

struct TablesOptions {
  int which = 1;
  std::vector<std::size_t> ns{20, 50, 200};
  std::optional<std::size_t> n;
  std::size_t k_max = 10;
  std::vector<double> halfwidths{0.04, 0.08, 0.16};
  std::optional<double> w;
  double fraction = 0.2;
  std::string kernel = "box";
  std::size_t rows = 7;
  int digits = 10;
  std::string out = "-";
};

void cmd_tables(const TablesOptions& o, std::ostream& out) {
  std::optional<ComparisonTable> table;
  switch (o.which) {
    case 1: table = convergence_table(o.ns); break;
    case 2: table = bias_table(o.n.value_or(50), o.k_max, o.halfwidths); break;
    case 3: table = concentration_table(o.n.value_or(50), o.w.value_or(0.08), o.k_max); break;
    case 4:
      table = table4_experiment(o.n.value_or(200), o.fraction, parse_kernel_shape(o.kernel), o.w.value_or(0.01), o.rows);
      break;
    default: throw ArgumentError("--which must be 1, 2, 3 or 4");
  }
  Output dest(o.out, out);
  table->write_csv(*dest, o.digits);
  dest.close();
}

// ---------------------------------------------------------------- synth

struct SynthOptions {
  std::string model = "white";
  std::vector<double> coeffs;
  double sigma2 = 1.0;
  double radius = 0.98;
  double peak = 0.2;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t burn_in = 1000;
  std::string out = "-";
};

ProcessSpec make_process(const std::string& model, const std::vector<double>& coeffs, double sigma2, double radius,
                         double peak, std::uint64_t seed) {
  if (model == "white") return ProcessSpec::white(sigma2, seed);
  if (model == "ar") return ProcessSpec::autoregressive(coeffs, sigma2, seed);
  if (model == "ar2peak") return ProcessSpec::ar2_peak(radius, peak, sigma2, seed);
  throw ArgumentError("unknown model '" + model + "' (expected white, ar or ar2peak)");
}

void cmd_synth(const SynthOptions& o, std::ostream& out) {
  auto spec = make_process(o.model, o.coeffs, o.sigma2, o.radius, o.peak, o.seed);
  spec.burn_in = o.burn_in;
  const auto series = generate(spec, o.n);
  Output dest(o.out, out);
  io::write_series(*dest, series.samples());
  dest.close();
}

// ---------------------------------------------------------------- compare

struct CompareOptions {
  std::string input;
  std::vector<std::string> families{"sine"};
  std::size_t k = 8;
  std::optional<double> w;
  bool adaptive = true;
  std::string truth_model;
  std::vector<double> truth_coeffs;
  double sigma2 = 1.0;
  double radius = 0.98;
  double peak = 0.2;
  std::string out = "-";
  std::string spectra_out;
};

void cmd_compare(const CompareOptions& o, std::ostream& out) {
  const auto series = load_series(o.input);
  const std::size_t n = series.size();
  const auto grid = FrequencyGrid::for_estimation(n);
  const auto weights = make_weights(WeightKind::uniform, o.k);
  const double correction = log_bias_b(o.k);
  // Slepian default: the bandwidth of K sinusoidal tapers.
  const double w = o.w.value_or(static_cast<double>(o.k + 1) / (2.0 * static_cast<double>(n + 1)));

  std::vector<std::string> names;
  std::vector<SpectralEstimate> estimates;
  std::vector<std::size_t> counts;
  for (const auto& name : o.families) {
    const auto kind = parse_family(name);
    auto est = fixed_estimate(series, kind, o.k, w, weights, grid, false);
    to_log(est, correction);
    names.push_back(family_label(kind));
    estimates.push_back(std::move(est));
    counts.push_back(o.k);
  }
  if (o.adaptive) {
    names.emplace_back("adaptive");
    estimates.push_back(two_stage_log_estimate(series, AdaptiveConfig::defaults(n), grid).estimate);
    counts.push_back(0);
  }

  std::optional<std::vector<double>> truth;
  if (!o.truth_model.empty()) {
    const auto spec = make_process(o.truth_model, o.truth_coeffs, o.sigma2, o.radius, o.peak, 0);
    truth = true_log_curvature(spec, grid).level;
  }

  Output dest(o.out, out);
  *dest << "method,k,ise\n";
  for (std::size_t i = 0; i < names.size(); ++i) {
    *dest << names[i] << ',' << (counts[i] == 0 ? std::string("variable") : std::to_string(counts[i])) << ','
          << (truth ? io::format_number(integrated_squared_log_error(estimates[i].values, *truth, grid)) : "") << '\n';
  }
  dest.close();

  if (!o.spectra_out.empty()) {
    Output spectra(o.spectra_out, out);
    *spectra << 'f';
    if (truth) *spectra << ",truth";
    for (const auto& name : names) *spectra << ',' << name;
    *spectra << '\n';
    for (std::size_t j = 0; 2 * j <= grid.size(); ++j) {
      *spectra << io::format_number(static_cast<double>(j) / static_cast<double>(grid.size()));
      if (truth) *spectra << ',' << io::format_number((*truth)[j]);
      for (const auto& est : estimates) *spectra << ',' << io::format_number(est.values[j]);
      *spectra << '\n';
    }
    spectra.close();
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multitaper spectral estimation with sinusoidal, minimum-bias and Slepian tapers"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  TapersOptions tapers;
  auto* t = app.add_subcommand("tapers", "Write a taper family, its spectral windows and local biases");
  t->add_option("--family", tapers.family, "sine, mb or slepian")->capture_default_str();
  t->add_option("--n", tapers.n, "Taper length N")->required()->check(CLI::Range(2, 100000));
  t->add_option("--k", tapers.k, "Number of tapers K")->capture_default_str()->check(CLI::PositiveNumber);
  t->add_option("--w", tapers.w, "Slepian halfwidth w in (0, 1/2)");
  t->add_option("--out", tapers.out, "Taper CSV (n,1..K); - for stdout")->capture_default_str();
  t->add_option("--window-out", tapers.window_out, "Window CSV (f,|V_1|^2..|V_K|^2) for f in [0, 1/2]");
  t->add_option("--bias-out", tapers.bias_out, "Local bias CSV (k,local_bias,normalized_bias)");
  t->add_option("--grid", tapers.grid, "Window grid size (default 16 N)");

  EstimateOptions estimate;
  auto* e = app.add_subcommand("estimate", "Fixed-K multitaper spectral estimate");
  e->add_option("--input", estimate.input, "Series file, one sample per line; - for stdin")->required();
  e->add_option("--k", estimate.k, "Number of tapers K")->capture_default_str()->check(CLI::PositiveNumber);
  e->add_option("--weights", estimate.weights, "uniform or parabolic")->capture_default_str();
  e->add_option("--family", estimate.family, "sine, mb or slepian")->capture_default_str();
  e->add_option("--w", estimate.w, "Slepian halfwidth");
  e->add_option("--grid", estimate.grid, "Grid size m (default 2(N+1) ceil(2N/(N+1)))");
  e->add_flag("--generic", estimate.generic, "Use one FFT per taper even for sine tapers");
  e->add_flag("--log", estimate.log, "Output the bias-corrected log-spectrum");
  e->add_option("--correction", estimate.correction, "Log bias correction: full or literal")->capture_default_str();
  e->add_option("--out", estimate.out, "Output path; - for stdout")->capture_default_str();
  e->add_flag("--json", estimate.json, "JSON instead of CSV");

  AdaptiveOptions adaptive;
  auto* a = app.add_subcommand("adaptive", "Two-stage plug-in log-spectrum estimate");
  a->add_option("--input", adaptive.input, "Series file, one sample per line; - for stdin")->required();
  a->add_option("--pilot-k", adaptive.pilot_k, "Pilot taper count (default ceil(N^(8/15)))");
  a->add_option("--k-min", adaptive.k_min, "Smallest taper count (default 4)");
  a->add_option("--k-max", adaptive.k_max, "Largest taper count (default ceil(N/4))");
  a->add_option("--pilot-halfwidth", adaptive.pilot_halfwidth, "Pilot smoothing halfwidth (default pilot_k/(N+1))");
  a->add_option("--mode", adaptive.mode, "variable_k or variable_w")->capture_default_str();
  a->add_option("--kernel", adaptive.kernel, "box or epanechnikov")->capture_default_str();
  a->add_option("--correction", adaptive.correction, "Log bias correction: full or literal")->capture_default_str();
  a->add_option("--derivative-step", adaptive.derivative_step, "Central-difference step in bins")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  a->add_option("--grid", adaptive.grid, "Grid size m, a multiple of 2(N+1)");
  a->add_option("--out", adaptive.out, "Estimate CSV (f,value,k_used); - for stdout")->capture_default_str();
  a->add_option("--profile-out", adaptive.profile_out, "Pilot curvature CSV");
  a->add_flag("--json", adaptive.json, "JSON instead of CSV");

  TablesOptions tables;
  auto* tb = app.add_subcommand("tables", "Taper comparison tables");
  tb->add_option("--which", tables.which, "1 convergence, 2 cumulative bias, 3 concentration, 4 smoothed-periodogram "
                                          "eigenstructure")
      ->capture_default_str()
      ->check(CLI::Range(1, 4));
  tb->add_option("--ns", tables.ns, "Series lengths for --which 1")->delimiter(',')->capture_default_str();
  tb->add_option("--n", tables.n, "Length for --which 2-4 (default 50, 50, 200)");
  tb->add_option("--k-max", tables.k_max, "Rows for --which 2 and 3")->capture_default_str();
  tb->add_option("--halfwidths", tables.halfwidths, "Slepian halfwidths for --which 2")->delimiter(',')->capture_default_str();
  tb->add_option("--w", tables.w, "Halfwidth for --which 3 and 4 (default 0.08, 0.01)");
  tb->add_option("--fraction", tables.fraction, "Split-cosine fraction for --which 4")->capture_default_str();
  tb->add_option("--kernel", tables.kernel, "Smoothing kernel for --which 4")->capture_default_str();
  tb->add_option("--rows", tables.rows, "Rows for --which 4")->capture_default_str();
  tb->add_option("--digits", tables.digits, "Significant digits")->capture_default_str()->check(CLI::Range(1, 17));
  tb->add_option("--out", tables.out, "Output path; - for stdout")->capture_default_str();

  SynthOptions synth;
  auto* s = app.add_subcommand("synth", "Simulate white noise or an autoregressive process");
  s->add_option("--model", synth.model, "white, ar or ar2peak")->capture_default_str();
  s->add_option("--coeffs", synth.coeffs, "AR coefficients a_1..a_p (model ar)")->delimiter(',');
  s->add_option("--sigma2", synth.sigma2, "Innovation variance")->capture_default_str();
  s->add_option("--radius", synth.radius, "Pole radius (ar2peak)")->capture_default_str();
  s->add_option("--peak", synth.peak, "Peak frequency (ar2peak)")->capture_default_str();
  s->add_option("--n", synth.n, "Number of samples")->required()->check(CLI::Range(2, 100000000));
  s->add_option("--seed", synth.seed, "RNG seed")->capture_default_str();
  s->add_option("--burn-in", synth.burn_in, "Minimum discarded samples")->capture_default_str();
  s->add_option("--out", synth.out, "Output path; - for stdout")->capture_default_str();

  CompareOptions compare;
  auto* c = app.add_subcommand("compare", "Compare log-spectrum estimates, with error against a known AR spectrum");
  c->add_option("--input", compare.input, "Series file, one sample per line; - for stdin")->required();
  c->add_option("--families", compare.families, "Fixed-K families to include")->delimiter(',')->capture_default_str();
  c->add_option("--k", compare.k, "Taper count for the fixed-K estimates")->capture_default_str()->check(CLI::PositiveNumber);
  c->add_option("--w", compare.w, "Slepian halfwidth (default (K+1)/(2(N+1)))");
  c->add_flag("!--no-adaptive", compare.adaptive, "Skip the adaptive estimate");
  c->add_option("--truth", compare.truth_model, "True model: white, ar or ar2peak");
  c->add_option("--truth-coeffs", compare.truth_coeffs, "AR coefficients of the true model")->delimiter(',');
  c->add_option("--sigma2", compare.sigma2, "Innovation variance of the true model")->capture_default_str();
  c->add_option("--radius", compare.radius, "Pole radius of the true ar2peak model")->capture_default_str();
  c->add_option("--peak", compare.peak, "Peak frequency of the true ar2peak model")->capture_default_str();
  c->add_option("--out", compare.out, "Report CSV (method,k,ise); - for stdout")->capture_default_str();
  c->add_option("--spectra-out", compare.spectra_out, "Log-spectra CSV, one column per method");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : exit_usage;
  }

  try {
    if (*t) cmd_tapers(tapers, out);
    if (*e) cmd_estimate(estimate, out);
    if (*a) cmd_adaptive(adaptive, out);
    if (*tb) cmd_tables(tables, out);
    if (*s) cmd_synth(synth, out);
    if (*c) cmd_compare(compare, out);
  } catch (const NumericalError& ex) {
    err << "numerical error: " << ex.what() << '\n';
    return exit_numerical;
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_usage;
  } catch (const std::out_of_range& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_usage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_numerical;
  }
  return 0;
}

}  // namespace mtspec::cli
