#include "bphz/roughsim/c_eps.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <stdexcept>

#include "bphz/roughsim/convolution.hpp"
#include "bphz/roughsim/noise.hpp"

namespace bphz::roughsim {

namespace {

using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
constexpr unsigned kDepth = 15;
constexpr double kTol = 1e-11;

}  // namespace

QuadratureResult c_eps_stationary(double eps, const KernelSpec& kernel, const Mollifier& rho) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const double p = kernel.hurst + 0.5;
  double inner_error = 0.0;
  // G(u) = int rho(b + u) rho(b) db, the autocorrelation of rho.
  auto g = [&](double u) {
    if (u >= 2.0) return 0.0;
    double err = 0.0;
    const double v = Quad::integrate([&](double b) { return rho(b + u) * rho(b); }, -1.0, 1.0 - u, kDepth, kTol, &err);
    inner_error = std::max(inner_error, err);
    return v;
  };
  auto f = [&](double w) {
    const double u = std::pow(w, 1.0 / p);
    return g(u) * kernel.cutoff(eps * u);
  };
  QuadratureResult out;
  double err = 0.0;
  const double scale = kernel.prefactor() * std::pow(eps, kernel.hurst - 0.5) / p;
  out.value = scale * Quad::integrate(f, 0.0, std::pow(2.0, p), kDepth, kTol, &err);
  out.error = scale * (err + std::pow(2.0, p) * inner_error);
  out.converged = out.error <= 1e-8 * std::abs(out.value) + 1e-14;
  return out;
}

QuadratureResult c_eps_at(double t, double eps, const KernelSpec& kernel, const Mollifier& rho) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  QuadratureResult out;
  if (t <= -eps) return out;
  const double p = kernel.hurst + 0.5;
  double inner_error = 0.0;
  // (rho_eps * K)(a) after v = (a - b)^p, which removes the singularity.
  auto smoothed_k = [&](double a) {
    const double v_lo = std::pow(std::max(a - eps, 0.0), p);
    const double v_hi = std::pow(a + eps, p);
    if (v_hi <= v_lo) return 0.0;
    double err = 0.0;
    const double v = Quad::integrate([&](double x) { return rho.scaled(a - std::pow(x, 1.0 / p), eps); }, v_lo, v_hi,
                                     kDepth, kTol, &err);
    inner_error = std::max(inner_error, err);
    return kernel.prefactor() / p * v;
  };
  double err = 0.0;
  out.value = Quad::integrate([&](double a) { return rho.scaled(a, eps) * smoothed_k(a); }, -eps, std::min(t, eps), kDepth,
                              kTol, &err);
  out.error = err + 2.0 * eps * inner_error * kernel.prefactor() / p / eps;
  out.converged = out.error <= 1e-8 * std::abs(out.value) + 1e-14;
  return out;
}

double c_eps_grid(const MollifierWeights& w, const std::vector<double>& taps, long window) {
  const int h = w.half;
  auto tap = [&](long q) { return q >= 0 && static_cast<std::size_t>(q) < taps.size() ? taps[static_cast<std::size_t>(q)] : 0.0; };
  double a = 0.0, acc = 0.0;
  for (int q = -h + 1; q <= h; ++q) {
    a += w.dw(q - 1);  // a = sum_{m < q} w'_m
    if (window >= 0 && q > window) break;
    double b = 0.0;
    for (int m = -h; m <= h; ++m) b += w.w(m) * tap(q - m);
    acc += a * b;
  }
  return w.dt * acc;
}

std::vector<double> c_eps_grid_profile(const MollifierWeights& w, const std::vector<double>& taps, std::size_t steps) {
  std::vector<double> out(steps + 1);
  const double full = c_eps_grid(w, taps);
  for (std::size_t k = 0; k <= steps; ++k)
    out[k] = static_cast<long>(k) >= w.half ? full : c_eps_grid(w, taps, static_cast<long>(k));
  return out;
}

McEstimate c_eps_monte_carlo(double eps, const KernelSpec& kernel, const Mollifier& rho, double dt, std::size_t paths,
                             std::uint64_t seed) {
  if (paths < 2) throw std::invalid_argument("need at least two paths");
  const auto w = rho.weights(eps, dt);
  const auto taps = hat_taps(kernel, dt);
  const std::size_t support = taps.size() - 1;
  const auto h = static_cast<std::size_t>(w.half);
  const std::size_t span = std::max<std::size_t>(64 * h, 256);
  const std::size_t cells = support + span + 2 * h;
  FftConvolver hat(taps, 0, cells + 1);
  MollifyPlan smooth(w, span + 2 * h + 1);
  std::vector<double> per_path(paths);
  const auto count = static_cast<long>(paths);
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    const auto dxi = brownian_increments(seed, static_cast<std::uint64_t>(i), cells, dt);
    std::vector<double> x(dxi);
    x.push_back(0.0);
    const auto full = hat.apply(x);
    // Window of fully supported times and the Brownian path on it.
    std::vector<double> what(full.begin() + static_cast<long>(support), full.end());
    std::vector<double> bm(what.size(), 0.0);
    for (std::size_t k = 1; k < bm.size(); ++k) bm[k] = bm[k - 1] + dxi[support + k - 1];
    const auto a = smooth.apply(bm), b = smooth.apply(what);
    double acc = 0.0;
    for (std::size_t k = a.first; k < a.last; ++k) acc += a.derivative[k] * b.value[k];
    per_path[static_cast<std::size_t>(i)] = acc / static_cast<double>(a.last - a.first);
  }
  McEstimate out;
  out.samples = paths;
  double mean = 0.0;
  for (double v : per_path) mean += v;
  mean /= static_cast<double>(paths);
  double var = 0.0;
  for (double v : per_path) var += (v - mean) * (v - mean);
  var /= static_cast<double>(paths - 1);
  out.mean = mean;
  out.std_error = std::sqrt(var / static_cast<double>(paths));
  return out;
}

}  // namespace bphz::roughsim
