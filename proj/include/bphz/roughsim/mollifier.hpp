#pragma once

#include <string>
#include <vector>

namespace bphz::roughsim {

/// Grid weights of rho_eps and its derivative, indexed m = -half..half.
/// Normalized so that sum w = 1 and the derivative weights map t -> 1.
struct MollifierWeights {
  int half = 0;
  double dt = 0.0;
  std::vector<double> value;       // w_m, convolution: sum_m w_m x[k-m]
  std::vector<double> derivative;  // w'_m: d/dt (rho*x)(t_k) = sum_m w'_m x[k-m]

  double w(int m) const { return value[static_cast<std::size_t>(m + half)]; }
  double dw(int m) const { return derivative[static_cast<std::size_t>(m + half)]; }
};

/// Symmetric smooth bump supported on [-1,1] with unit mass.
class Mollifier {
 public:
  /// Known names: "bump" (exp(-1/(1-x^2))) and "bump2" (exp(-1/(1-x^2)^2)).
  explicit Mollifier(const std::string& name = "bump");

  const std::string& name() const { return name_; }
  double operator()(double x) const;
  double derivative(double x) const;
  /// rho_eps(x) = rho(x/eps)/eps.
  double scaled(double x, double eps) const { return (*this)(x / eps) / eps; }
  double scaled_derivative(double x, double eps) const { return derivative(x / eps) / (eps * eps); }

  /// Throws std::invalid_argument when eps spans fewer than 4 grid steps.
  MollifierWeights weights(double eps, double dt) const;

 private:
  double raw(double x) const;
  double raw_log_derivative(double x) const;

  std::string name_;
  int power_ = 1;
  double norm_ = 1.0;
};

}  // namespace bphz::roughsim
