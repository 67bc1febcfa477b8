#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bphz/config.hpp"

namespace bphz::roughsim {

enum class TestFunction { Linear, Quadratic, Sine, Constant };

TestFunction parse_test_function(const std::string& name);
std::string test_function_name(TestFunction f);
/// The m-th derivative of f at x.
double test_function_derivative(TestFunction f, int m, double x);

/// How the correction constant is computed for the simulated pair.
/// Grid: exact covariance of the discretized processes. Quadrature: the
/// continuous-time integral.
enum class CEpsMode { Grid, Quadrature };

CEpsMode parse_c_eps_mode(const std::string& name);
std::string c_eps_mode_name(CEpsMode m);

/// Keys: H, kappa, T, N, P, seed, eps, lambda, f, mollifier, c_eps_mode.
struct SimConfig {
  double hurst = 0.3;
  double kappa = 0.01;
  double horizon = 1.0;
  std::size_t n = 4096;
  std::size_t paths = 200;
  std::uint64_t seed = 1;
  std::vector<double> eps{0.125, 0.0625, 0.03125, 0.015625, 0.0078125};
  std::vector<double> lambdas{0.25, 0.125, 0.0625};
  TestFunction f = TestFunction::Sine;
  std::string mollifier = "bump";
  CEpsMode c_eps_mode = CEpsMode::Grid;

  double dt() const { return horizon / static_cast<double>(n); }
  /// Throws ConfigError naming the offending field.
  void validate() const;
  static SimConfig from_config(const KeyValueConfig& cfg);
  KeyValueConfig to_config() const;
};

struct WZRecord {
  double eps = 0.0;
  std::size_t path = 0;
  double uncorrected = 0.0;
  double corrected = 0.0;
  double model = 0.0;
  double ito = 0.0;
};

struct WZSummary {
  double eps = 0.0;
  double rms_uncorrected = 0.0;
  double rms_corrected = 0.0;
  double rms_model = 0.0;
  /// Stationary value of the correction constant.
  double c_eps = 0.0;
};

struct WZResult {
  std::uint64_t seed = 0;
  int truncation = 0;
  std::vector<WZRecord> records;  // eps-major, then path
  std::vector<WZSummary> summary;
};

/// For each path and eps, with W and W^H started at 0 and t in [0, T]:
///   uncorrected  trapezoid sum of f(W^{H,eps}) W_dot^eps
///   corrected    uncorrected - trapezoid sum of C^eps(t) f'(W^{H,eps})
///   model        sum over blocks of length eps of the renormalized model
///                of f's Taylor expansion to degree M at the block start
///   ito          left-point sum of f(W^H) dW
WZResult wz_experiment(const SimConfig& config);

}  // namespace bphz::roughsim
