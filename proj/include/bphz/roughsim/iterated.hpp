#pragma once

#include <cstddef>
#include <vector>

namespace bphz::roughsim {

/// W^n(s, t_k) for every grid index k, where `what[k]` is What(t_k) and
/// `dxi[r]` the noise increment over [t_r, t_{r+1}]. For k >= s this is the
/// left-point sum of (What(t_r) - What(t_s))^n dxi_r over s <= r < k; for
/// k < s it is
///   -sum_i C(n,i) (What(t_k) - What(t_s))^i W^{n-i}(t_k, t_s).
std::vector<double> iterated_w(int n, std::size_t s, const std::vector<double>& what, const std::vector<double>& dxi);

/// The left-point sum over s <= r < t for a single pair s <= t.
double iterated_w_direct(int n, std::size_t s, std::size_t t, const std::vector<double>& what,
                         const std::vector<double>& dxi);

}  // namespace bphz::roughsim
