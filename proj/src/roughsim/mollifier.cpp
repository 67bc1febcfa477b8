#include "bphz/roughsim/mollifier.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <stdexcept>

#include "bphz/errors.hpp"

namespace bphz::roughsim {

Mollifier::Mollifier(const std::string& name) : name_(name) {
  if (name == "bump")
    power_ = 1;
  else if (name == "bump2")
    power_ = 2;
  else
    throw ConfigError("unknown mollifier '" + name + "' (expected bump or bump2)");
  boost::math::quadrature::tanh_sinh<double> integrator;
  norm_ = integrator.integrate([this](double x) { return raw(x); }, -1.0, 1.0);
}

double Mollifier::raw(double x) const {
  if (std::abs(x) >= 1.0) return 0.0;
  const double q = 1.0 - x * x;
  return std::exp(-1.0 / std::pow(q, power_));
}

// d/dx log raw(x) = -power * 2x / q^(power+1)
double Mollifier::raw_log_derivative(double x) const {
  const double q = 1.0 - x * x;
  return -2.0 * power_ * x / std::pow(q, power_ + 1);
}

double Mollifier::operator()(double x) const { return raw(x) / norm_; }

double Mollifier::derivative(double x) const {
  if (std::abs(x) >= 1.0) return 0.0;
  return raw(x) * raw_log_derivative(x) / norm_;
}

MollifierWeights Mollifier::weights(double eps, double dt) const {
  if (!(eps > 0.0) || !(dt > 0.0)) throw std::invalid_argument("eps and dt must be positive");
  if (eps < 4.0 * dt * (1.0 - 1e-12))
    throw std::invalid_argument("mollifier scale " + std::to_string(eps) + " is resolved by fewer than 4 grid steps");
  MollifierWeights out;
  out.dt = dt;
  out.half = static_cast<int>(std::ceil(eps / dt));
  const auto n = static_cast<std::size_t>(2 * out.half + 1);
  out.value.resize(n);
  out.derivative.resize(n);
  double mass = 0.0, moment = 0.0;
  for (int m = -out.half; m <= out.half; ++m) {
    const double x = m * dt;
    out.value[static_cast<std::size_t>(m + out.half)] = scaled(x, eps) * dt;
    out.derivative[static_cast<std::size_t>(m + out.half)] = scaled_derivative(x, eps) * dt;
  }
  for (int m = -out.half; m <= out.half; ++m) {
    mass += out.w(m);
    moment += -m * dt * out.dw(m);
  }
  for (auto& v : out.value) v /= mass;
  for (auto& v : out.derivative) v /= moment;
  return out;
}

}  // namespace bphz::roughsim
