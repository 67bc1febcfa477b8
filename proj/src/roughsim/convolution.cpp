#include "bphz/roughsim/convolution.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace bphz::roughsim {

namespace {

double tap_sum(const std::vector<double>& taps, std::size_t origin, const std::vector<double>& x, std::size_t j) {
  const auto n = static_cast<long>(x.size());
  double acc = 0.0;
  for (std::size_t q = 0; q < taps.size(); ++q) {
    const long src = static_cast<long>(j) - (static_cast<long>(q) - static_cast<long>(origin));
    if (src < 0) break;
    if (src < n) acc += taps[q] * x[static_cast<std::size_t>(src)];
  }
  return acc;
}

std::size_t fft_size(std::size_t n) {
  std::size_t s = 1;
  while (s < n) s <<= 1;
  return s;
}

}  // namespace

std::vector<double> convolve_serial(const std::vector<double>& taps, std::size_t origin, const std::vector<double>& x) {
  std::vector<double> y(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) y[j] = tap_sum(taps, origin, x, j);
  return y;
}

std::vector<double> convolve_omp(const std::vector<double>& taps, std::size_t origin, const std::vector<double>& x) {
  std::vector<double> y(x.size());
  const auto n = static_cast<long>(x.size());
#pragma omp parallel for schedule(static)
  for (long j = 0; j < n; ++j) y[static_cast<std::size_t>(j)] = tap_sum(taps, origin, x, static_cast<std::size_t>(j));
  return y;
}

struct FftConvolver::Plans {
  fftw_plan forward = nullptr, backward = nullptr;
  fftw_complex* taps_hat = nullptr;
};

FftConvolver::FftConvolver(const std::vector<double>& taps, std::size_t origin, std::size_t length)
    : length_(length), origin_(origin), size_(fft_size(length + taps.size())), plans_(std::make_unique<Plans>()) {
  const std::size_t half = size_ / 2 + 1;
  auto* real = fftw_alloc_real(size_);
  auto* spec = fftw_alloc_complex(half);
  plans_->taps_hat = fftw_alloc_complex(half);
#pragma omp critical(bphz_fftw_plan)
  {
    plans_->forward = fftw_plan_dft_r2c_1d(static_cast<int>(size_), real, spec, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_dft_c2r_1d(static_cast<int>(size_), spec, real, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < size_; ++i) real[i] = i < taps.size() ? taps[i] : 0.0;
  fftw_execute_dft_r2c(plans_->forward, real, plans_->taps_hat);
  fftw_free(real);
  fftw_free(spec);
}

FftConvolver::~FftConvolver() {
#pragma omp critical(bphz_fftw_plan)
  {
    fftw_destroy_plan(plans_->forward);
    fftw_destroy_plan(plans_->backward);
  }
  fftw_free(plans_->taps_hat);
}

std::vector<double> FftConvolver::apply(const std::vector<double>& x) const {
  if (x.size() != length_) throw std::invalid_argument("signal length does not match the convolver");
  const std::size_t half = size_ / 2 + 1;
  auto* real = fftw_alloc_real(size_);
  auto* spec = fftw_alloc_complex(half);
  for (std::size_t i = 0; i < size_; ++i) real[i] = i < length_ ? x[i] : 0.0;
  fftw_execute_dft_r2c(plans_->forward, real, spec);
  for (std::size_t i = 0; i < half; ++i) {
    const double a = spec[i][0], b = spec[i][1];
    const double c = plans_->taps_hat[i][0], d = plans_->taps_hat[i][1];
    spec[i][0] = a * c - b * d;
    spec[i][1] = a * d + b * c;
  }
  fftw_execute_dft_c2r(plans_->backward, spec, real);
  std::vector<double> y(length_);
  const double scale = 1.0 / static_cast<double>(size_);
  for (std::size_t j = 0; j < length_; ++j) y[j] = real[j + origin_] * scale;
  fftw_free(real);
  fftw_free(spec);
  return y;
}

std::vector<double> convolve(const std::vector<double>& taps, std::size_t origin, const std::vector<double>& x,
                             Backend backend) {
  switch (backend) {
    case Backend::Serial:
      return convolve_serial(taps, origin, x);
    case Backend::OpenMP:
      return convolve_omp(taps, origin, x);
    case Backend::Fft:
      break;
  }
  return FftConvolver(taps, origin, x.size()).apply(x);
}

std::vector<double> rl_taps(const KernelSpec& kernel, double dt, std::size_t count) {
  std::vector<double> taps(count, 0.0);
  for (std::size_t q = 1; q < count; ++q) taps[q] = kernel.k(static_cast<double>(q) * dt);
  return taps;
}

std::vector<double> hat_taps(const KernelSpec& kernel, double dt) {
  const auto count = static_cast<std::size_t>(std::ceil(2.0 * kernel.horizon / dt)) + 1;
  std::vector<double> taps(count, 0.0);
  for (std::size_t q = 1; q < count; ++q) taps[q] = kernel.k_hat(static_cast<double>(q) * dt);
  return taps;
}

std::vector<double> fbm_rl(const std::vector<double>& dw, double hurst, double dt, Backend backend) {
  KernelSpec kernel(hurst, 1.0);
  std::vector<double> x(dw);
  x.push_back(0.0);
  return convolve(rl_taps(kernel, dt, x.size()), 0, x, backend);
}

std::vector<double> stationary_hat_process(const std::vector<double>& dxi, std::size_t lead, const KernelSpec& kernel,
                                           double dt, Backend backend) {
  const auto taps = hat_taps(kernel, dt);
  const std::size_t support = taps.size() - 1;
  if (lead < support) throw std::invalid_argument("grid must start at least 2T before time 0");
  std::vector<double> x(dxi);
  x.push_back(0.0);
  auto y = convolve(taps, 0, x, backend);
  y.erase(y.begin(), y.begin() + static_cast<long>(std::min(support, y.size())));
  return y;
}

Mollified mollify(const std::vector<double>& x, const MollifierWeights& w, Backend backend) {
  const auto h = static_cast<std::size_t>(w.half);
  Mollified out;
  out.first = std::min(h, x.size());
  out.last = x.size() > h ? x.size() - h : out.first;
  out.value = convolve(w.value, h, x, backend);
  out.derivative = convolve(w.derivative, h, x, backend);
  return out;
}

MollifyPlan::MollifyPlan(const MollifierWeights& w, std::size_t length)
    : half_(static_cast<std::size_t>(w.half)),
      value_(w.value, half_, length),
      derivative_(w.derivative, half_, length) {}

Mollified MollifyPlan::apply(const std::vector<double>& x) const {
  Mollified out;
  out.first = std::min(half_, x.size());
  out.last = x.size() > half_ ? x.size() - half_ : out.first;
  out.value = value_.apply(x);
  out.derivative = derivative_.apply(x);
  return out;
}

}  // namespace bphz::roughsim
