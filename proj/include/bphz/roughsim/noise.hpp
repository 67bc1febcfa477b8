#pragma once

#include <cstdint>
#include <vector>

namespace bphz::roughsim {

/// n i.i.d. N(0, dt) increments; a pure function of (seed, path, n, dt).
std::vector<double> brownian_increments(std::uint64_t seed, std::uint64_t path, std::size_t n, double dt);

/// Running sum with a leading zero: W[0] = 0, W[k] = dW[0] + ... + dW[k-1].
std::vector<double> cumulative(const std::vector<double>& increments);

/// Brownian path on k*dt, k = 0..n.
std::vector<double> sample_brownian(std::uint64_t seed, std::uint64_t path, std::size_t n, double dt);

}  // namespace bphz::roughsim
