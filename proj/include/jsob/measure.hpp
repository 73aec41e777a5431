#ifndef JSOB_MEASURE_HPP
#define JSOB_MEASURE_HPP

#include <cmath>
#include <concepts>
#include <string>

#include "jsob/error.hpp"
#include "jsob/special.hpp"

namespace jsob {

/// Parameters of the Jacobi measure (1-x)^alpha (1+x)^beta dx on [-1, 1].
struct jacobi_params {
  double alpha = 0.0;
  double beta = 0.0;

  void validate() const {
    detail::require(std::isfinite(alpha) && alpha > -1.0, error_code::invalid_config,
                    "alpha must be > -1 (got " + detail::show(alpha) + ")");
    detail::require(std::isfinite(beta) && beta > -1.0, error_code::invalid_config,
                    "beta must be > -1 (got " + detail::show(beta) + ")");
  }

  friend bool operator==(const jacobi_params&, const jacobi_params&) = default;
};

/// Total mass 2^{a+b+1} Gamma(a+1) Gamma(b+1) / Gamma(a+b+2).
template <std::floating_point Real = long double>
Real total_mass(const jacobi_params& params) {
  params.validate();
  const Real a = params.alpha;
  const Real b = params.beta;
  return std::pow(Real(2), a + b + 1) *
         std::exp(log_gamma(a + 1) + log_gamma(b + 1) - log_gamma(a + b + 2));
}

/// The weight function itself.
template <std::floating_point Real>
Real jacobi_weight(const jacobi_params& params, Real x) {
  return std::pow(Real(1) - x, Real(params.alpha)) * std::pow(Real(1) + x, Real(params.beta));
}

}  // namespace jsob

#endif  // JSOB_MEASURE_HPP
