#ifndef JSOB_SPECIAL_HPP
#define JSOB_SPECIAL_HPP

#include <cmath>
#include <concepts>

#include "jsob/error.hpp"

namespace jsob {

/// Natural log of |Gamma(x)|, computed in long double.
template <std::floating_point Real>
Real log_gamma(Real x) {
  detail::require(std::isfinite(x), error_code::domain, "log_gamma: argument is not finite");
  detail::require(!(x <= 0 && x == std::floor(x)), error_code::domain, "log_gamma: pole at non-positive integer");
  return static_cast<Real>(std::lgamma(static_cast<long double>(x)));
}

/// log of the generalized binomial coefficient Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1)).
template <std::floating_point Real>
Real log_binomial(Real a, Real b) {
  return log_gamma(a + 1) - log_gamma(b + 1) - log_gamma(a - b + 1);
}

}  // namespace jsob

#endif  // JSOB_SPECIAL_HPP
