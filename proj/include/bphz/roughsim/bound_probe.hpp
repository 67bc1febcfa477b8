#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bphz/model.hpp"
#include "bphz/roughsim/convolution.hpp"
#include "bphz/roughsim/kernel.hpp"
#include "bphz/roughsim/wong_zakai.hpp"

namespace bphz::roughsim {

/// White-noise increments with their Brownian path and What on a common grid
/// t_k = t0 + k dt, k = 0..what.size()-1; dxi[k] is the increment over
/// [t_k, t_{k+1}] and w[0] = 0.
struct StationaryNoise {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> dxi, w, what;
};

/// Noise on [t0, T + margin dt] with t0 = -margin dt; What is fully supported
/// on the whole window.
StationaryNoise sample_stationary_noise(const KernelSpec& kernel, double dt, std::size_t steps, std::size_t margin,
                                        std::uint64_t seed, std::uint64_t path);

/// Two-noise path of the smooth model on the interior of the mollified
/// window: noise 1 is rho_eps * W (derivative channel xi_dot_eps), noise 2 is
/// rho_eps * What.
SamplePath smooth_model_path(const Mollified& w, const Mollified& what, double t0, double dt);

/// phi(u) = 2 rho(2u - 1) with rho the standard bump: smooth, unit mass,
/// supported on [0, 1].
double probe_test_function(double u);

struct ProbeRow {
  std::string tau;
  double lambda = 0.0;
  double eps = 0.0;
  double rms = 0.0;
};

/// log rms = log_c + lambda_exponent log lambda + eps_exponent log eps.
struct ProbeFit {
  std::string tau;
  double log_c = 0.0;
  double lambda_exponent = 0.0;
  double eps_exponent = 0.0;
};

struct ProbeResult {
  std::vector<ProbeRow> rows;
  std::vector<ProbeFit> fits;
};

/// Monte Carlo root mean square of ((Pi^hat_eps - Pi)_s tau)(phi^lambda_s)
/// at s = T/2 for tau in {Xi, I(xi^), Xi I(xi^)}. Pi uses left-point sums on
/// the grid, Pi^hat_eps the renormalized smooth model with the grid value
/// of the correction constant.
ProbeResult model_bound_probe(const SimConfig& config);

}  // namespace bphz::roughsim
