#include "bphz/roughsim/kernel.hpp"

#include <boost/math/differentiation/autodiff.hpp>
#include <cmath>
#include <limits>

#include "bphz/errors.hpp"

namespace bphz::roughsim {

namespace ad = boost::math::differentiation;

namespace {

template <class X>
X psi(const X& x) {
  using std::exp;
  if (x <= 0) return X(0);
  return exp(-1 / x);
}

template <class X>
X transition(const X& u, double horizon) {
  if (u <= horizon) return X(1);
  if (u >= 2 * horizon) return X(0);
  const X s = (u - horizon) / horizon;
  const X a = psi(1 - s);
  return a / (a + psi(s));
}

template <class X>
X power_kernel(const X& u, double hurst) {
  using std::pow;
  return std::sqrt(2.0 * hurst) * pow(u, hurst - 0.5);
}

}  // namespace

KernelSpec::KernelSpec(double hurst, double horizon) : hurst(hurst), horizon(horizon) { validate(); }

void KernelSpec::validate() const {
  if (!(hurst > 0.0 && hurst <= 0.5)) throw ConfigError("H must lie in (0, 1/2], got " + std::to_string(hurst));
  if (!(horizon > 0.0)) throw ConfigError("T must be positive");
}

double KernelSpec::prefactor() const { return std::sqrt(2.0 * hurst); }

double KernelSpec::k(double u) const { return u > 0.0 ? power_kernel(u, hurst) : 0.0; }

double KernelSpec::cutoff(double u) const { return u < 0.0 ? 0.0 : transition(u, horizon); }

double KernelSpec::k_hat(double u) const { return u > 0.0 ? k(u) * transition(u, horizon) : 0.0; }

std::array<double, 3> KernelSpec::k_jet(double u) const {
  if (u <= 0.0) return {0.0, 0.0, 0.0};
  const double a = hurst - 0.5;
  const double v = k(u);
  return {v, a * v / u, a * (a - 1) * v / (u * u)};
}

std::array<double, 3> KernelSpec::k_hat_jet(double u) const {
  if (u <= 0.0 || u >= 2 * horizon) return {0.0, 0.0, 0.0};
  const auto x = ad::make_fvar<double, 2>(u);
  const auto y = power_kernel(x, hurst) * transition(x, horizon);
  return {y.derivative(0), y.derivative(1), y.derivative(2)};
}

DerivativeBound KernelSpec::derivative_bound(int samples) const {
  DerivativeBound out;
  const double lo = std::log(1e-6 * horizon), hi = std::log(2 * horizon);
  for (int i = 0; i < samples; ++i) {
    const double u = std::exp(lo + (hi - lo) * (i + 0.5) / samples);
    const auto a = k_hat_jet(u), b = k_jet(u);
    for (int order = 0; order < 3; ++order) {
      double ratio;
      if (b[order] != 0.0)
        ratio = std::abs(a[order] / b[order]);
      else
        ratio = a[order] == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
      if (ratio > out.per_order[order]) {
        out.per_order[order] = ratio;
        out.argmax[order] = u;
      }
    }
  }
  out.c = std::max({out.per_order[0], out.per_order[1], out.per_order[2]});
  return out;
}

}  // namespace bphz::roughsim
