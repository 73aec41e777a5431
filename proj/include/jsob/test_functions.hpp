#ifndef JSOB_TEST_FUNCTIONS_HPP
#define JSOB_TEST_FUNCTIONS_HPP

#include <cmath>
#include <complex>
#include <concepts>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "jsob/error.hpp"
#include "jsob/sobolev.hpp"

namespace jsob {

/// Highest derivative order shipped by the built-in test functions.
inline constexpr int registry_max_order = 4;

inline const std::vector<std::string>& registry_names() {
  static const std::vector<std::string> names = {"exp", "sin5", "runge", "abs1.5", "abs2.5", "abs3.5"};
  return names;
}

namespace detail {

template <std::floating_point Real>
sampled_function<Real> make_exp() {
  sampled_function<Real> f{"exp", {}};
  for (int k = 0; k <= registry_max_order; ++k) f.derivatives.emplace_back([](Real x) { return std::exp(x); });
  return f;
}

// d^k sin(5x) = 5^k sin(5x + k pi/2)
template <std::floating_point Real>
sampled_function<Real> make_sin5() {
  sampled_function<Real> f{"sin5", {}};
  for (int k = 0; k <= registry_max_order; ++k) {
    f.derivatives.emplace_back([k](Real x) {
      const Real scale = std::pow(Real(5), Real(k));
      switch (k % 4) {
        case 0: return scale * std::sin(5 * x);
        case 1: return scale * std::cos(5 * x);
        case 2: return -scale * std::sin(5 * x);
        default: return -scale * std::cos(5 * x);
      }
    });
  }
  return f;
}

// 1/(1+25x^2) = Re 1/(1+5ix), so the k-th derivative is Re[(-5i)^k k! (1+5ix)^{-k-1}].
template <std::floating_point Real>
sampled_function<Real> make_runge() {
  sampled_function<Real> f{"runge", {}};
  for (int k = 0; k <= registry_max_order; ++k) {
    f.derivatives.emplace_back([k](Real x) {
      using C = std::complex<Real>;
      Real factorial = 1;
      for (int i = 2; i <= k; ++i) factorial *= Real(i);
      const C base = std::pow(C(0, -5), k) * factorial;
      return (base / std::pow(C(1, 5 * x), k + 1)).real();
    });
  }
  return f;
}

// d^k |x|^s = s(s-1)...(s-k+1) |x|^{s-k} sign(x)^k
template <std::floating_point Real>
sampled_function<Real> make_abs_power(Real s, std::string name) {
  sampled_function<Real> f{std::move(name), {}};
  for (int k = 0; k <= registry_max_order; ++k) {
    Real falling = 1;
    for (int i = 0; i < k; ++i) falling *= s - Real(i);
    f.derivatives.emplace_back([k, s, falling](Real x) {
      const Real sign = (k % 2 == 1) ? (x > 0 ? Real(1) : (x < 0 ? Real(-1) : Real(0))) : Real(1);
      return falling * std::pow(std::fabs(x), s - Real(k)) * sign;
    });
  }
  return f;
}

}  // namespace detail

/// Built-in smooth and rough test functions with analytic derivatives up to order 4.
template <std::floating_point Real = long double>
sampled_function<Real> make_test_function(std::string_view name) {
  if (name == "exp") return detail::make_exp<Real>();
  if (name == "sin5") return detail::make_sin5<Real>();
  if (name == "runge") return detail::make_runge<Real>();
  if (name == "abs1.5") return detail::make_abs_power<Real>(Real(1.5), "abs1.5");
  if (name == "abs2.5") return detail::make_abs_power<Real>(Real(2.5), "abs2.5");
  if (name == "abs3.5") return detail::make_abs_power<Real>(Real(3.5), "abs3.5");
  std::string known;
  for (const auto& n : registry_names()) known += (known.empty() ? "" : ", ") + n;
  detail::fail(error_code::invalid_config,
               "unknown function '" + std::string(name) + "'; registered: " + known);
}

}  // namespace jsob

#endif  // JSOB_TEST_FUNCTIONS_HPP
