#pragma once

#include <cstdint>
#include <vector>

#include "bphz/roughsim/kernel.hpp"
#include "bphz/roughsim/mollifier.hpp"

namespace bphz::roughsim {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

/// E[xi_dot_eps(0) xi_hat_eps(0)] = int rho_eps(a) (rho_eps * Khat)(a) da for
/// the stationary pair driven by white noise on the whole line.
QuadratureResult c_eps_stationary(double eps, const KernelSpec& kernel, const Mollifier& rho);

/// E[W_dot_eps(t) W^{H,eps}(t)] with W and W^H started at time 0:
/// int_{-eps}^{min(t,eps)} rho_eps(a) (rho_eps * K)(a) da.
QuadratureResult c_eps_at(double t, double eps, const KernelSpec& kernel, const Mollifier& rho);

/// The same covariance for the grid processes: derivative weights applied to
/// a left-point Brownian path, value weights applied to the convolution of
/// the increments with `taps`. With `window` set only noise cells r with
/// k - r <= window contribute (noise started `window` cells before t_k).
double c_eps_grid(const MollifierWeights& w, const std::vector<double>& taps, long window = -1);

/// c_eps_grid(w, taps, k) for k = 0..steps.
std::vector<double> c_eps_grid_profile(const MollifierWeights& w, const std::vector<double>& taps, std::size_t steps);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t samples = 0;
};

/// Sample mean of xi_dot_eps(t) xi_hat_eps(t) on a grid of step dt, one
/// average over a window of times per path, `paths` independent paths.
McEstimate c_eps_monte_carlo(double eps, const KernelSpec& kernel, const Mollifier& rho, double dt, std::size_t paths,
                             std::uint64_t seed);

}  // namespace bphz::roughsim
