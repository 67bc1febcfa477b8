#include "bphz/roughsim/iterated.hpp"

#include <cmath>
#include <stdexcept>

namespace bphz::roughsim {

namespace {

void check(int n, std::size_t s, const std::vector<double>& what, const std::vector<double>& dxi) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  if (s >= what.size()) throw std::invalid_argument("base point is off the grid");
  if (dxi.size() + 1 < what.size()) throw std::invalid_argument("too few noise increments for the grid");
}

std::vector<double> binomial_row(int n) {
  std::vector<double> row(static_cast<std::size_t>(n) + 1, 1.0);
  for (int i = 1; i < n; ++i)
    for (int j = i; j > 0; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
  return row;
}

}  // namespace

double iterated_w_direct(int n, std::size_t s, std::size_t t, const std::vector<double>& what,
                         const std::vector<double>& dxi) {
  check(n, s, what, dxi);
  if (t < s || t >= what.size()) throw std::invalid_argument("need s <= t on the grid");
  double acc = 0.0;
  for (std::size_t r = s; r < t; ++r) acc += std::pow(what[r] - what[s], n) * dxi[r];
  return acc;
}

std::vector<double> iterated_w(int n, std::size_t s, const std::vector<double>& what, const std::vector<double>& dxi) {
  check(n, s, what, dxi);
  const std::size_t len = what.size();
  std::vector<double> out(len, 0.0);
  double acc = 0.0;
  for (std::size_t k = s + 1; k < len; ++k) {
    acc += std::pow(what[k - 1] - what[s], n) * dxi[k - 1];
    out[k] = acc;
  }
  if (s == 0) return out;
  // With y_r = What(t_r) - What(t_s) and S_l(k) = sum_{k <= r < s} y_r^l dxi_r,
  // W^j(t_k, t_s) = sum_l C(j,l) S_l(k) (-y_k)^(j-l).
  std::vector<std::vector<double>> binom;
  for (int j = 0; j <= n; ++j) binom.push_back(binomial_row(j));
  std::vector<double> suffix(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> back(static_cast<std::size_t>(n) + 1);
  for (std::size_t k = s; k-- > 0;) {
    const double y = what[k] - what[s];
    double p = 1.0;
    for (int l = 0; l <= n; ++l, p *= y) suffix[static_cast<std::size_t>(l)] += p * dxi[k];
    for (int j = 0; j <= n; ++j) {
      double v = 0.0, q = 1.0;
      for (int l = j; l >= 0; --l, q *= -y) v += binom[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] * suffix[static_cast<std::size_t>(l)] * q;
      back[static_cast<std::size_t>(j)] = v;
    }
    double flip = 0.0, yi = 1.0;
    for (int i = 0; i <= n; ++i, yi *= y) flip += binom[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] * yi * back[static_cast<std::size_t>(n - i)];
    out[k] = -flip;
  }
  return out;
}

}  // namespace bphz::roughsim
