#include "mtspec/fft.hpp"

#include <memory>
#include <mutex>

#include <fftw3.h>

#include "mtspec/error.hpp"

namespace mtspec {
namespace {

// The FFTW planner is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

class R2cPlan {
 public:
  explicit R2cPlan(std::size_t m)
      : m_(m),
        in_(static_cast<double*>(fftw_malloc(sizeof(double) * m))),
        out_(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (m / 2 + 1)))) {
    if (!in_ || !out_) throw NumericalError("fft: allocation failed");
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(m), in_.get(), out_.get(), FFTW_ESTIMATE);
    if (!plan_) throw NumericalError("fft: planning failed");
  }
  ~R2cPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  R2cPlan(const R2cPlan&) = delete;
  R2cPlan& operator=(const R2cPlan&) = delete;

  double* input() noexcept { return in_.get(); }
  const fftw_complex* output() const noexcept { return out_.get(); }
  void execute() noexcept { fftw_execute(plan_); }

 private:
  std::size_t m_;
  std::unique_ptr<double, FftwFree> in_;
  std::unique_ptr<fftw_complex, FftwFree> out_;
  fftw_plan plan_ = nullptr;
};

}  // namespace

std::vector<std::complex<double>> forward_transform(std::span<const double> x, std::size_t m) {
  if (m < 1) throw ArgumentError("fft: transform size must be positive");
  R2cPlan plan(m);
  double* in = plan.input();
  std::fill(in, in + m, 0.0);
  for (std::size_t t = 0; t < x.size(); ++t) in[t % m] += x[t];
  plan.execute();

  std::vector<std::complex<double>> y(m);
  const fftw_complex* out = plan.output();
  for (std::size_t j = 0; j <= m / 2; ++j) y[j] = {out[j][0], out[j][1]};
  for (std::size_t j = m / 2 + 1; j < m; ++j) y[j] = std::conj(y[m - j]);
  return y;
}

}  // namespace mtspec
