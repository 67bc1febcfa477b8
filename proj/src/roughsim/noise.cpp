#include "bphz/roughsim/noise.hpp"

#include <cmath>
#include <random>

#include "bphz/rng.hpp"

namespace bphz::roughsim {

std::vector<double> brownian_increments(std::uint64_t seed, std::uint64_t path, std::size_t n, double dt) {
  auto engine = stream_engine(seed, path);
  std::normal_distribution<double> normal(0.0, std::sqrt(dt));
  std::vector<double> out(n);
  for (auto& v : out) v = normal(engine);
  return out;
}

std::vector<double> cumulative(const std::vector<double>& increments) {
  std::vector<double> out(increments.size() + 1, 0.0);
  for (std::size_t k = 0; k < increments.size(); ++k) out[k + 1] = out[k] + increments[k];
  return out;
}

std::vector<double> sample_brownian(std::uint64_t seed, std::uint64_t path, std::size_t n, double dt) {
  return cumulative(brownian_increments(seed, path, n, dt));
}

}  // namespace bphz::roughsim
