#ifndef JSOB_TESTS_SUPPORT_HPP
#define JSOB_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "jsob/jsob.hpp"

namespace jsob::testing {

using ld = long double;
using poly = jsob::polynomial;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline int uniform_int(std::mt19937_64& g, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g); }

inline poly random_poly(std::mt19937_64& g, int degree, double scale = 1.0) {
  std::vector<ld> c(static_cast<std::size_t>(degree) + 1);
  for (auto& x : c) x = uniform(g, -scale, scale);
  if (c.back() == 0) c.back() = 1;
  return poly(c);
}

/// max |a_i - b_i| / max |b_i|, the norm-wise relative coefficient difference.
inline ld coeff_rel_diff(const poly& a, const poly& b) {
  const std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
  ld diff = 0, scale = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const ld x = i < a.coeffs().size() ? a.coeffs()[i] : 0;
    const ld y = i < b.coeffs().size() ? b.coeffs()[i] : 0;
    diff = std::max(diff, std::fabs(x - y));
    scale = std::max(scale, std::fabs(y));
  }
  return scale == 0 ? diff : diff / scale;
}

/// Generalized binomial C(z, k) as a product, no gamma functions.
inline ld binom(ld z, int k) {
  ld r = 1;
  for (int i = 1; i <= k; ++i) r *= (z - k + i) / i;
  return r;
}

/// P_n^{(a,b)}(x) from the explicit sum
///   sum_s C(n+a, n-s) C(n+b, s) ((x-1)/2)^s ((x+1)/2)^{n-s}.
inline ld jacobi_explicit(ld a, ld b, int n, ld x) {
  ld sum = 0;
  for (int s = 0; s <= n; ++s)
    sum += binom(n + a, n - s) * binom(n + b, s) * std::pow((x - 1) / 2, s) * std::pow((x + 1) / 2, n - s);
  return sum;
}

/// int (1+x)^j d mu^{a,b} = 2^{a+b+j+1} B(a+1, b+j+1), via std::lgamma.
inline ld shifted_moment(double a, double b, int j) {
  return std::pow(2.0L, a + b + j + 1) *
         std::exp(std::lgamma(a + 1.0L) + std::lgamma(b + j + 1.0L) - std::lgamma(a + b + j + 2.0L));
}

inline std::vector<ld> chebyshev_points(int count) {
  std::vector<ld> x;
  for (int i = 0; i < count; ++i) x.push_back(std::cos(std::numbers::pi_v<ld> * (i + 0.5L) / count));
  return x;
}

inline std::vector<sobolev_config> gram_configs() {
  return {
      {0.0, 0.0, 1, {0.0}, 2.0},
      {0.0, 0.0, 2, {0.0, 0.0}, 2.0},
      {0.5, -0.3, 2, {-1.0, 1.0}, 2.0},
      {2.0, 2.0, 3, {0.0, 0.5, -0.5}, 2.0},
  };
}

/// max |G - I| over the Sobolev Gram matrix of q_0..q_N.
inline ld gram_deviation(const sobolev_config& cfg, int n_max) {
  const auto q = sobolev_basis_set<ld>(cfg, n_max);
  ld worst = 0;
  for (int i = 0; i <= n_max; ++i)
    for (int j = i; j <= n_max; ++j)
      worst = std::max(worst, std::fabs(sobolev_inner_product<ld>(cfg, q[i], q[j]) - (i == j ? 1 : 0)));
  return worst;
}

}  // namespace jsob::testing

#endif  // JSOB_TESTS_SUPPORT_HPP
