#ifndef JSOB_QUADRATURE_HPP
#define JSOB_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>
#include <utility>
#include <vector>

#include "jsob/error.hpp"
#include "jsob/measure.hpp"

namespace jsob {

inline constexpr int max_rule_size = 256;

/// Gauss-Jacobi nodes and weights for d mu^{alpha,beta}.
/// Nodes strictly increasing in (-1, 1); weights positive and summing to the total mass.
template <std::floating_point Real = long double>
struct quadrature_rule {
  jacobi_params params;
  std::vector<Real> nodes;
  std::vector<Real> weights;

  std::size_t size() const noexcept { return nodes.size(); }
};

namespace detail {

// Recurrence coefficients of the monic Jacobi polynomials: diagonal a_n and
// squared off-diagonal b_n of the Jacobi matrix. The n = 0 / n = 1 entries
// use the closed forms that stay finite when alpha + beta is 0 or -1.
template <std::floating_point Real>
Real jacobi_matrix_diag(Real a, Real b, int n) {
  if (n == 0) return (b - a) / (a + b + 2);
  const Real s = 2 * Real(n) + a + b;
  return (b * b - a * a) / (s * (s + 2));
}

template <std::floating_point Real>
Real jacobi_matrix_offdiag_sq(Real a, Real b, int n) {
  if (n == 1) {
    const Real s = a + b + 2;
    return 4 * (1 + a) * (1 + b) / (s * s * (s + 1));
  }
  const Real nn = Real(n);
  const Real s = 2 * nn + a + b;
  return 4 * nn * (nn + a) * (nn + b) * (nn + a + b) / (s * s * (s + 1) * (s - 1));
}

// Implicit-shift QL on a symmetric tridiagonal matrix, tracking only the first
// component of each eigenvector. d: diagonal (eigenvalues on exit), e[i]
// couples i and i+1, z: first eigenvector row (starts as e_1).
template <std::floating_point Real>
void tridiagonal_ql(std::vector<Real>& d, std::vector<Real>& e, std::vector<Real>& z) {
  const int n = static_cast<int>(d.size());
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int mm;
    do {
      for (mm = l; mm < n - 1; ++mm) {
        const Real dd = std::fabs(d[mm]) + std::fabs(d[mm + 1]);
        if (std::fabs(e[mm]) <= std::numeric_limits<Real>::epsilon() * dd) break;
      }
      if (mm != l) {
        require(iter++ < 60, error_code::non_convergence,
                "gauss_jacobi_rule: tridiagonal eigen-solver did not converge");
        Real g = (d[l + 1] - d[l]) / (2 * e[l]);
        Real r = std::hypot(g, Real(1));
        g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
        Real s = 1, c = 1, p = 0;
        int i;
        for (i = mm - 1; i >= l; --i) {
          const Real f = s * e[i];
          const Real bb = c * e[i];
          e[i + 1] = (r = std::hypot(f, g));
          if (r == 0) {
            d[i + 1] -= p;
            e[mm] = 0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2 * c * bb;
          d[i + 1] = g + (p = s * r);
          g = c * r - bb;
          const Real zf = z[i + 1];
          z[i + 1] = s * z[i] + c * zf;
          z[i] = c * z[i] - s * zf;
        }
        if (r == 0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[mm] = 0;
      }
    } while (mm != l);
  }
}

}  // namespace detail

/// m-point Gauss-Jacobi rule via Golub-Welsch; exact for degree <= 2m - 1.
template <std::floating_point Real = long double>
quadrature_rule<Real> gauss_jacobi_rule(const jacobi_params& params, int m) {
  params.validate();
  detail::require(m >= 1 && m <= max_rule_size, error_code::invalid_config,
                  "gauss_jacobi_rule: rule size must be in [1, 256]");
  const Real a = params.alpha;
  const Real b = params.beta;
  std::vector<Real> d(m), e(m, Real(0)), z(m, Real(0));
  for (int i = 0; i < m; ++i) d[i] = detail::jacobi_matrix_diag(a, b, i);
  for (int i = 0; i + 1 < m; ++i) e[i] = std::sqrt(detail::jacobi_matrix_offdiag_sq(a, b, i + 1));
  z[0] = 1;
  detail::tridiagonal_ql(d, e, z);

  const Real mass = total_mass<Real>(params);
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
  quadrature_rule<Real> rule{params, std::vector<Real>(m), std::vector<Real>(m)};
  for (int i = 0; i < m; ++i) {
    rule.nodes[i] = d[order[i]];
    rule.weights[i] = mass * z[order[i]] * z[order[i]];
  }
  return rule;
}

/// Process-wide cache of rules; construction is pure so sharing is safe.
template <std::floating_point Real = long double>
std::shared_ptr<const quadrature_rule<Real>> shared_gauss_jacobi_rule(const jacobi_params& params, int m) {
  static std::mutex mutex;
  static std::map<std::tuple<double, double, int>, std::shared_ptr<const quadrature_rule<Real>>> cache;
  const auto key = std::make_tuple(params.alpha, params.beta, m);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto rule = std::make_shared<const quadrature_rule<Real>>(gauss_jacobi_rule<Real>(params, m));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(rule)).first->second;
}

/// Sum of w_i f(x_i). A non-finite f(x_i) raises error_code::non_finite naming the node.
template <std::floating_point Real, class F>
Real integrate(const quadrature_rule<Real>& rule, F&& f) {
  Real sum = 0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Real v = static_cast<Real>(f(rule.nodes[i]));
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "integrate: integrand is not finite at node x=" << static_cast<double>(rule.nodes[i]);
      detail::fail(error_code::non_finite, msg.str());
    }
    sum += rule.weights[i] * v;
  }
  return sum;
}

template <std::floating_point Real>
struct adaptive_result {
  Real value = 0;
  Real achieved_tol = 0;  // relative gap between the last two estimates
  bool converged = false;
  int points = 0;         // size of the rule behind `value`
};

/// What the relative gap is measured against.
enum class tolerance_scale {
  value,      // |I|
  magnitude,  // |I| + integral of |f|, for integrands that cancel (Fourier coefficients)
};

/// Doubles the rule size from 16 to 256 until successive estimates differ by
/// less than rel_tol * scale. Non-convergence is reported, not thrown.
template <std::floating_point Real = long double, class F>
adaptive_result<Real> integrate_adaptive(const jacobi_params& params, F&& f, Real rel_tol,
                                         tolerance_scale scale = tolerance_scale::value) {
  detail::require(rel_tol >= Real(1e-14), error_code::invalid_config,
                  "integrate_adaptive: rel_tol must be >= 1e-14");
  // One pass per rule: the integral and the integral of |f|.
  auto estimate = [&](int m) {
    const auto rule = shared_gauss_jacobi_rule<Real>(params, m);
    std::vector<Real> values(rule->size());
    std::size_t i = 0;
    const Real value = integrate(*rule, [&](Real x) { return values[i++] = static_cast<Real>(f(x)); });
    Real abs_sum = 0;
    if (scale == tolerance_scale::magnitude) {
      for (std::size_t j = 0; j < rule->size(); ++j) abs_sum += rule->weights[j] * std::fabs(values[j]);
    }
    return std::pair{value, abs_sum};
  };

  adaptive_result<Real> result;
  Real previous = estimate(16).first;
  result.value = previous;
  result.points = 16;
  result.achieved_tol = std::numeric_limits<Real>::infinity();
  for (int m = 32; m <= max_rule_size; m *= 2) {
    const auto [current, abs_sum] = estimate(m);
    const Real reference = std::fabs(current) + abs_sum + Real(1e-300);
    const Real gap = std::fabs(current - previous);
    result.value = current;
    result.points = m;
    result.achieved_tol = gap / reference;
    if (gap < rel_tol * reference) {
      result.converged = true;
      return result;
    }
    previous = current;
  }
  return result;
}

/// Running record of adaptive integrations performed on behalf of a caller.
struct quadrature_diagnostics {
  double worst_tol = 0.0;
  int integrals = 0;
  int non_converged = 0;

  template <std::floating_point Real>
  void record(const adaptive_result<Real>& r) {
    ++integrals;
    if (!r.converged) ++non_converged;
    worst_tol = std::max(worst_tol, static_cast<double>(r.achieved_tol));
  }
};

/// How higher layers treat adaptive quadrature. strict = true turns
/// non-convergence into non_convergence_error; otherwise the last estimate is
/// used and the shortfall is recorded in `diagnostics` when provided.
template <std::floating_point Real = long double>
struct quadrature_policy {
  Real rel_tol = Real(1e-10);
  bool strict = true;
  quadrature_diagnostics* diagnostics = nullptr;
};

namespace detail {

template <std::floating_point Real>
Real accept(const adaptive_result<Real>& r, const quadrature_policy<Real>& policy, const char* what) {
  if (policy.diagnostics) policy.diagnostics->record(r);
  if (!r.converged && policy.strict) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": adaptive quadrature did not converge (estimate=" << static_cast<double>(r.value)
        << ", relative gap=" << static_cast<double>(r.achieved_tol) << ")";
    throw non_convergence_error(msg.str(), static_cast<double>(r.value), static_cast<double>(r.achieved_tol));
  }
  return r.value;
}

}  // namespace detail

/// Integral of f(x) (hi - x)^a (x - lo)^b over [lo, hi], adaptively, by
/// mapping a Gauss-Jacobi rule with exponents (a, b) onto the interval.
template <std::floating_point Real = long double, class F>
adaptive_result<Real> integrate_interval_adaptive(Real lo, Real hi, F&& f, Real rel_tol,
                                                  const jacobi_params& endpoint_exponents = {}) {
  detail::require(hi > lo, error_code::invalid_config, "integrate_interval_adaptive: need lo < hi");
  const Real half = (hi - lo) / 2;
  auto mapped = [&](Real s) { return f(lo + half * (1 + s)); };
  auto r = integrate_adaptive<Real>(endpoint_exponents, mapped, rel_tol, tolerance_scale::magnitude);
  r.value *= std::pow(half, Real(endpoint_exponents.alpha + endpoint_exponents.beta + 1));
  return r;
}

}  // namespace jsob

#endif  // JSOB_QUADRATURE_HPP
