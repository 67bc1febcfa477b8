#pragma once

#include <array>

namespace bphz::roughsim {

/// Bound C with |d^k Khat| <= C |d^k K| on (0, 2T), k = 0, 1, 2.
struct DerivativeBound {
  double c = 0.0;
  std::array<double, 3> per_order{};
  /// Largest u sampled where the bound was attained.
  std::array<double, 3> argmax{};
};

/// K(u) = sqrt(2H) u^(H-1/2) on u > 0 and its truncation Khat = K * chi,
/// where chi is smooth, equal to 1 on [0,T] and to 0 on [2T, inf).
struct KernelSpec {
  double hurst = 0.3;
  double horizon = 1.0;

  KernelSpec() = default;
  KernelSpec(double hurst, double horizon = 1.0);

  /// Throws ConfigError unless H is in (0, 1/2] and T > 0.
  void validate() const;
  double prefactor() const;
  double k(double u) const;
  double cutoff(double u) const;
  double k_hat(double u) const;
  /// Value, first and second derivative.
  std::array<double, 3> k_jet(double u) const;
  std::array<double, 3> k_hat_jet(double u) const;

  /// Sampled on a log-spaced mesh of (0, 2T). Orders where d^k K vanishes
  /// identically (H = 1/2, k >= 1) report infinity.
  DerivativeBound derivative_bound(int samples = 4000) const;
};

}  // namespace bphz::roughsim
