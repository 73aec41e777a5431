#ifndef JSOB_JACOBI_HPP
#define JSOB_JACOBI_HPP

#include <cmath>
#include <concepts>
#include <limits>
#include <type_traits>
#include <string>
#include <vector>

#include "jsob/error.hpp"
#include "jsob/measure.hpp"
#include "jsob/polynomial.hpp"
#include "jsob/quadrature.hpp"
#include "jsob/special.hpp"

namespace jsob {

namespace detail {

inline void check_degree(int n, int cap, const char* what) {
  require(n >= 0, error_code::invalid_config, std::string(what) + ": degree must be non-negative");
  require(n <= cap, error_code::degree_cap,
          std::string(what) + ": degree " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

}  // namespace detail

/// Jacobi polynomial P_n^{(alpha,beta)}, normalized by P_n(1) = binom(n + alpha, n),
/// built in coefficient space from the three-term recurrence
///
///   2n(n+a+b)(2n+a+b-2) P_n = (2n+a+b-1)[(2n+a+b)(2n+a+b-2) x + a^2 - b^2] P_{n-1}
///                             - 2(n+a-1)(n+b-1)(2n+a+b) P_{n-2}.
template <std::floating_point Real = long double>
basic_polynomial<Real> jacobi_poly(const jacobi_params& params, int n, int cap = default_degree_cap) {
  params.validate();
  detail::check_degree(n, cap, "jacobi_poly");
  const Real a = params.alpha;
  const Real b = params.beta;
  std::vector<Real> prev{Real(1)};
  if (n == 0) return basic_polynomial<Real>(prev);
  std::vector<Real> cur{(a - b) / 2, (a + b + 2) / 2};
  for (int k = 2; k <= n; ++k) {
    const Real kk = Real(k);
    const Real s = 2 * kk + a + b;
    const Real denom = 2 * kk * (kk + a + b);
    const Real lin = (s - 1) * s / denom;
    const Real shift = (s - 1) * (a * a - b * b) / ((s - 2) * denom);
    const Real back = 2 * (kk + a - 1) * (kk + b - 1) * s / ((s - 2) * denom);
    std::vector<Real> next(k + 1, Real(0));
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i + 1] += lin * cur[i];
      next[i] += shift * cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= back * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return basic_polynomial<Real>(std::move(cur));
}

/// log of h_n, the squared L^2(mu^{alpha,beta}) norm of P_n.
template <std::floating_point Real = long double>
Real log_h_n(const jacobi_params& params, int n) {
  params.validate();
  detail::require(n >= 0, error_code::invalid_config, "h_n: degree must be non-negative");
  const Real a = params.alpha;
  const Real b = params.beta;
  const Real log2 = std::log(Real(2));
  if (n == 0) {
    // (a+b+1) Gamma(a+b+1) = Gamma(a+b+2) keeps the a + b = -1 case finite.
    return (a + b + 1) * log2 + log_gamma(a + 1) + log_gamma(b + 1) - log_gamma(a + b + 2);
  }
  const Real nn = Real(n);
  return (a + b + 1) * log2 - std::log(2 * nn + a + b + 1) + log_gamma(nn + a + 1) +
         log_gamma(nn + b + 1) - log_gamma(nn + 1) - log_gamma(nn + a + b + 1);
}

template <std::floating_point Real = long double>
Real h_n(const jacobi_params& params, int n) {
  const Real log_h = log_h_n<Real>(params, n);
  detail::require(log_h < std::log(std::numeric_limits<Real>::max()) &&
                      log_h > std::log(std::numeric_limits<Real>::min()),
                  error_code::overflow, "h_n: value outside the representable range");
  const Real a = params.alpha;
  const Real b = params.beta;
  // Split off the power of two so that integer-parameter cases are exact.
  return std::pow(Real(2), a + b + 1) * std::exp(log_h - (a + b + 1) * std::log(Real(2)));
}

/// p_n = h_n^{-1/2} P_n.
template <std::floating_point Real = long double>
basic_polynomial<Real> orthonormal_jacobi(const jacobi_params& params, int n, int cap = default_degree_cap) {
  return (Real(1) / std::sqrt(h_n<Real>(params, n))) * jacobi_poly<Real>(params, n, cap);
}

/// A_{n,k} with (p_n^{(a,b)})^{(k)} = A_{n,k} p_{n-k}^{(a+k,b+k)}; zero for k > n.
template <std::floating_point Real = long double>
Real derivative_constant(const jacobi_params& params, int n, int k) {
  params.validate();
  detail::require(n >= 0 && k >= 0, error_code::invalid_config,
                  "derivative_constant: n and k must be non-negative");
  if (k > n) return Real(0);
  if (k == 0) return Real(1);
  const Real nn = Real(n);
  const Real s = Real(params.alpha) + Real(params.beta);
  const Real log_sq = log_gamma(nn + 1) + log_gamma(nn + s + k + 1) - log_gamma(nn - k + 1) -
                      log_gamma(nn + s + 1);
  return std::exp(log_sq / 2);
}

/// a_n = <f, p_n> in L^2(mu^{alpha,beta}) for a callable f.
template <std::floating_point Real = long double, class F>
Real jacobi_fourier_coefficient(const jacobi_params& params, F&& f, int n,
                                const quadrature_policy<Real>& policy = {}) {
  const auto pn = orthonormal_jacobi<Real>(params, n);
  const auto r = integrate_adaptive<Real>(
      params, [&](Real x) { return static_cast<Real>(f(x)) * eval(pn, x); }, policy.rel_tol,
      tolerance_scale::magnitude);
  return detail::accept(r, policy, "jacobi_fourier_coefficient");
}

/// Polynomial input: the exact rule of size ceil((deg f + n + 1) / 2) replaces adaptivity.
template <std::floating_point Real = long double>
Real jacobi_fourier_coefficient(const jacobi_params& params, const basic_polynomial<Real>& f, int n) {
  const auto pn = orthonormal_jacobi<Real>(params, n);
  const int m = (f.degree() + n) / 2 + 1;
  const auto rule = shared_gauss_jacobi_rule<Real>(params, m);
  return integrate(*rule, [&](Real x) { return eval(f, x) * eval(pn, x); });
}

/// S_n(f) = sum_{k<=n} a_k p_k as a single polynomial.
template <std::floating_point Real = long double, class F>
basic_polynomial<Real> jacobi_fourier_partial_sum(const jacobi_params& params, F&& f, int n,
                                                  const quadrature_policy<Real>& policy = {}) {
  basic_polynomial<Real> sum;
  for (int k = 0; k <= n; ++k) {
    Real a_k;
    if constexpr (std::is_same_v<std::remove_cvref_t<F>, basic_polynomial<Real>>)
      a_k = jacobi_fourier_coefficient<Real>(params, f, k);
    else
      a_k = jacobi_fourier_coefficient<Real>(params, f, k, policy);
    sum = sum + a_k * orthonormal_jacobi<Real>(params, k);
  }
  return sum;
}

}  // namespace jsob

#endif  // JSOB_JACOBI_HPP
