#include "bphz/roughsim/bound_probe.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <memory>

#include "bphz/coalgebra.hpp"
#include "bphz/errors.hpp"
#include "bphz/gaussian.hpp"
#include "bphz/roughsim/c_eps.hpp"
#include "bphz/roughsim/iterated.hpp"
#include "bphz/roughsim/noise.hpp"
#include "bphz/structure.hpp"
#include "bphz/symbol_text.hpp"
#include "bphz/symbols.hpp"

namespace bphz::roughsim {

StationaryNoise sample_stationary_noise(const KernelSpec& kernel, double dt, std::size_t steps, std::size_t margin,
                                        std::uint64_t seed, std::uint64_t path) {
  const std::size_t support = hat_taps(kernel, dt).size() - 1;
  const std::size_t lead = support + margin;
  const std::size_t cells = lead + steps + margin;
  const auto dxi = brownian_increments(seed, path, cells, dt);
  StationaryNoise out;
  out.dt = dt;
  out.t0 = -static_cast<double>(margin) * dt;
  out.what = stationary_hat_process(dxi, lead, kernel, dt);
  out.dxi.assign(dxi.begin() + static_cast<long>(support), dxi.end());
  out.w = cumulative(out.dxi);
  return out;
}

SamplePath smooth_model_path(const Mollified& w, const Mollified& what, double t0, double dt) {
  const std::size_t a = std::max(w.first, what.first), b = std::min(w.last, what.last);
  if (b <= a) throw std::invalid_argument("mollified window is empty");
  SamplePath p;
  p.t0 = t0 + static_cast<double>(a) * dt;
  p.dt = dt;
  auto slice = [&](const std::vector<double>& v) { return std::vector<double>(v.begin() + static_cast<long>(a), v.begin() + static_cast<long>(b)); };
  p.xi = {slice(w.value), slice(what.value)};
  p.xi_dot = {slice(w.derivative), slice(what.derivative)};
  return p;
}

double probe_test_function(double u) {
  static const Mollifier rho("bump");
  return 2.0 * rho(2.0 * u - 1.0);
}

namespace {

double trapezoid_product(const std::vector<double>& phi, const std::vector<double>& v, std::size_t offset, double dt) {
  double acc = 0.0;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const double weight = (k == 0 || k + 1 == phi.size()) ? 0.5 : 1.0;
    acc += weight * phi[k] * v[offset + k];
  }
  return acc * dt;
}

}  // namespace

ProbeResult model_bound_probe(const SimConfig& cfg) {
  cfg.validate();
  if (cfg.lambdas.empty()) throw ConfigError("field 'lambda': empty list");
  const double dt = cfg.dt();
  const std::size_t n = cfg.n;
  const KernelSpec kernel(cfg.hurst, cfg.horizon);
  const Mollifier rho(cfg.mollifier);
  const auto spec = rough_vol_spec(from_double(cfg.hurst), from_double(cfg.kappa));
  const std::vector<TypedTree> taus{sym::xi(1), sym::integ_xi_pow(2, 1), sym::xi_integ_xi_pow(1, 2, 1)};

  std::vector<MollifierWeights> weights;
  std::size_t margin = 0;
  for (double e : cfg.eps) {
    weights.push_back(rho.weights(e, dt));
    margin = std::max(margin, static_cast<std::size_t>(weights.back().half));
  }
  std::vector<double> c_values;
  const auto taps = hat_taps(kernel, dt);
  for (const auto& w : weights) c_values.push_back(c_eps_grid(w, taps));

  const std::size_t len = margin + n + margin + 1;
  std::vector<std::unique_ptr<MollifyPlan>> plans;
  for (const auto& w : weights) plans.push_back(std::make_unique<MollifyPlan>(w, len));

  const std::size_t base = margin + n / 2;  // index of s = T/2 on the noise grid
  std::vector<std::size_t> widths;
  std::vector<std::vector<double>> phis;
  for (double lam : cfg.lambdas) {
    const auto width = static_cast<std::size_t>(std::llround(lam / dt));
    if (width < 8) throw ConfigError("field 'lambda': " + std::to_string(lam) + " spans fewer than 8 grid steps");
    std::vector<double> phi(width + 1);
    for (std::size_t k = 0; k <= width; ++k) phi[k] = probe_test_function(static_cast<double>(k) * dt / lam) / lam;
    widths.push_back(width);
    phis.push_back(std::move(phi));
  }

  const std::size_t ne = cfg.eps.size(), nl = cfg.lambdas.size(), nt = taus.size();
  auto slot = [&](std::size_t t, std::size_t l, std::size_t e) { return (t * nl + l) * ne + e; };
  std::vector<std::vector<double>> diffs(nt * nl * ne, std::vector<double>(cfg.paths));

  const auto count = static_cast<long>(cfg.paths);
#pragma omp parallel
  {
    TwistedAntipode antipode(spec);
#pragma omp for schedule(dynamic)
    for (long ip = 0; ip < count; ++ip) {
      const auto path = static_cast<std::size_t>(ip);
      const auto noise = sample_stationary_noise(kernel, dt, n, margin, cfg.seed, path);
      // Pi_s tau paired with phi, per lambda; tau = Xi I(xi^) via W^1(s, .).
      const auto w1 = iterated_w(1, base, noise.what, noise.dxi);
      std::vector<std::array<double, 3>> rough(nl);
      for (std::size_t l = 0; l < nl; ++l) {
        const auto& phi = phis[l];
        double xi_pair = 0.0, chain_pair = 0.0;
        for (std::size_t k = 0; k < widths[l]; ++k) {
          xi_pair += phi[k] * noise.dxi[base + k];
          chain_pair += phi[k] * (w1[base + k + 1] - w1[base + k]);
        }
        std::vector<double> lifted(widths[l] + 1);
        for (std::size_t k = 0; k <= widths[l]; ++k) lifted[k] = noise.what[base + k] - noise.what[base];
        rough[l] = {xi_pair, trapezoid_product(phi, lifted, 0, dt), chain_pair};
      }
      for (std::size_t e = 0; e < ne; ++e) {
        const auto a = plans[e]->apply(noise.w);
        const auto b = plans[e]->apply(noise.what);
        SamplePath sp = smooth_model_path(a, b, noise.t0, dt);
        const std::size_t shift = std::max(a.first, b.first);
        NumericCovariance cov(2);
        cov.set(GaussianVar::d(1), GaussianVar::x(2), c_values[e]);
        for (std::size_t t = 0; t < nt; ++t) {
          const auto smooth = eval_pi_bphz(base - shift, taus[t], sp, antipode, cov);
          for (std::size_t l = 0; l < nl; ++l) {
            const double paired = trapezoid_product(phis[l], smooth.values, base - shift, dt);
            diffs[slot(t, l, e)][path] = paired - rough[l][t];
          }
        }
      }
    }
  }

  ProbeResult out;
  for (std::size_t t = 0; t < nt; ++t) {
    Eigen::MatrixXd design(static_cast<long>(nl * ne), 3);
    Eigen::VectorXd rhs(static_cast<long>(nl * ne));
    long row = 0;
    for (std::size_t l = 0; l < nl; ++l)
      for (std::size_t e = 0; e < ne; ++e, ++row) {
        double acc = 0.0;
        for (double v : diffs[slot(t, l, e)]) acc += v * v;
        const double r = std::sqrt(acc / static_cast<double>(cfg.paths));
        out.rows.push_back({format_tree(taus[t]), cfg.lambdas[l], cfg.eps[e], r});
        design(row, 0) = 1.0;
        design(row, 1) = std::log(cfg.lambdas[l]);
        design(row, 2) = std::log(cfg.eps[e]);
        rhs(row) = std::log(r);
      }
    ProbeFit fit;
    fit.tau = format_tree(taus[t]);
    if (nl >= 2 && ne >= 2) {
      const Eigen::VectorXd beta = design.colPivHouseholderQr().solve(rhs);
      fit.log_c = beta(0);
      fit.lambda_exponent = beta(1);
      fit.eps_exponent = beta(2);
    } else {
      fit.log_c = fit.lambda_exponent = fit.eps_exponent = std::nan("");
    }
    out.fits.push_back(fit);
  }
  return out;
}

}  // namespace bphz::roughsim
