#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "bphz/roughsim/kernel.hpp"
#include "bphz/roughsim/mollifier.hpp"

namespace bphz::roughsim {

enum class Backend { Serial, OpenMP, Fft };

/// y[j] = sum_q taps[q] * x[j - (q - origin)] for j = 0..x.size()-1, with x
/// taken as zero off its range.
std::vector<double> convolve_serial(const std::vector<double>& taps, std::size_t origin, const std::vector<double>& x);
std::vector<double> convolve_omp(const std::vector<double>& taps, std::size_t origin, const std::vector<double>& x);

/// The same map through FFTW, for a fixed tap set and signal length. Plans
/// are made once; apply() is safe to call from several threads.
class FftConvolver {
 public:
  FftConvolver(const std::vector<double>& taps, std::size_t origin, std::size_t length);
  ~FftConvolver();
  FftConvolver(const FftConvolver&) = delete;
  FftConvolver& operator=(const FftConvolver&) = delete;

  std::size_t length() const { return length_; }
  std::vector<double> apply(const std::vector<double>& x) const;

 private:
  struct Plans;
  std::size_t length_, origin_, size_;
  std::unique_ptr<Plans> plans_;
};

std::vector<double> convolve(const std::vector<double>& taps, std::size_t origin, const std::vector<double>& x,
                             Backend backend);

/// taps[q] = sqrt(2H) (q dt)^(H-1/2) for q = 1..count-1, taps[0] = 0.
std::vector<double> rl_taps(const KernelSpec& kernel, double dt, std::size_t count);
/// The same with Khat; count is 2T/dt + 1.
std::vector<double> hat_taps(const KernelSpec& kernel, double dt);

/// Left-point Riemann-Liouville fBm on k*dt, k = 0..n, from n increments.
std::vector<double> fbm_rl(const std::vector<double>& dw, double hurst, double dt, Backend backend = Backend::Fft);

/// What on the grid of `dxi`, whose first `lead` cells lie before time 0.
/// Only fully supported times are returned: entry k is What((k + s - lead) dt)
/// with s = hat_taps(kernel, dt).size() - 1. Throws std::invalid_argument if
/// lead < s.
std::vector<double> stationary_hat_process(const std::vector<double>& dxi, std::size_t lead, const KernelSpec& kernel,
                                           double dt, Backend backend = Backend::Fft);

/// rho_eps * x and its time derivative. Entries outside [first, last) see the
/// zero extension of x.
struct Mollified {
  std::size_t first = 0, last = 0;
  std::vector<double> value, derivative;
};

Mollified mollify(const std::vector<double>& x, const MollifierWeights& w, Backend backend = Backend::Fft);

/// mollify() through prepared FFT plans for a fixed signal length.
class MollifyPlan {
 public:
  MollifyPlan(const MollifierWeights& w, std::size_t length);
  Mollified apply(const std::vector<double>& x) const;

 private:
  std::size_t half_;
  FftConvolver value_, derivative_;
};

}  // namespace bphz::roughsim
