#ifndef JSOB_GONCHAROV_HPP
#define JSOB_GONCHAROV_HPP

#include <cmath>
#include <concepts>
#include <span>
#include <string>
#include <vector>

#include "jsob/error.hpp"
#include "jsob/polynomial.hpp"

namespace jsob {

/// k-th Goncharov polynomial of the nodes x = (x_0, ..., x_{m-1}):
///
///   G_{x,k}(s) = int_{x_0}^{s} int_{x_1}^{s_1} ... int_{x_{k-1}}^{s_{k-1}} ds_k ... ds_1,
///
/// so that G^{(nu)}(x_nu) = delta_{nu,k}. The innermost integral uses x_{k-1};
/// swapping the order gives a different polynomial.
template <std::floating_point Real = long double>
basic_polynomial<Real> goncharov_poly(std::span<const Real> nodes, int k) {
  detail::require(!nodes.empty(), error_code::invalid_config, "goncharov_poly: empty node vector");
  detail::require(k >= 0 && k < static_cast<int>(nodes.size()), error_code::invalid_config,
                  "goncharov_poly: index " + std::to_string(k) + " out of range [0, " +
                      std::to_string(nodes.size()) + ")");
  for (const Real x : nodes)
    detail::require(std::isfinite(x), error_code::invalid_config, "goncharov_poly: nodes must be finite");
  return iterated_antiderivative(basic_polynomial<Real>::constant(Real(1)), nodes.first(k));
}

/// Abel-Goncharov interpolant: the unique polynomial of degree < m with A^{(k)}(x_k) = y_k.
template <std::floating_point Real = long double>
basic_polynomial<Real> abel_goncharov_interpolant(std::span<const Real> nodes, std::span<const Real> values) {
  detail::require(nodes.size() == values.size(), error_code::invalid_config,
                  "abel_goncharov_interpolant: " + std::to_string(nodes.size()) + " nodes but " +
                      std::to_string(values.size()) + " values");
  basic_polynomial<Real> result;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (values[k] == Real(0)) continue;
    result = result + values[k] * goncharov_poly<Real>(nodes, static_cast<int>(k));
  }
  return result;
}

}  // namespace jsob

#endif  // JSOB_GONCHAROV_HPP
