#ifndef JSOB_SOBOLEV_HPP
#define JSOB_SOBOLEV_HPP

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdio>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jsob/error.hpp"
#include "jsob/goncharov.hpp"
#include "jsob/jacobi.hpp"
#include "jsob/polynomial.hpp"
#include "jsob/quadrature.hpp"

namespace jsob {

/// Parameters of the discrete-continuous Jacobi-Sobolev norm
///
///   ||f||_{S,p}^p = sum_{k<ell} |f^{(k)}(omega_k)|^p + int |f^{(ell)}|^p d mu^{alpha,beta}.
///
/// p only enters norms; the orthonormal basis is always the p = 2 object.
struct sobolev_config {
  double alpha = 0.0;
  double beta = 0.0;
  int ell = 1;
  std::vector<double> omega{0.0};
  double p = 2.0;

  jacobi_params jacobi() const { return {alpha, beta}; }

  void validate() const {
    jacobi().validate();
    detail::require(ell >= 1, error_code::invalid_config, "ell must be >= 1");
    detail::require(static_cast<int>(omega.size()) == ell, error_code::invalid_config,
                    "omega must have exactly ell = " + std::to_string(ell) + " entries (got " +
                        std::to_string(omega.size()) + ")");
    for (const double w : omega)
      detail::require(std::isfinite(w), error_code::invalid_config, "omega entries must be finite");
    detail::require(std::isfinite(p) && p >= 1.0, error_code::invalid_config, "p must be >= 1");
  }

  template <std::floating_point Real>
  std::vector<Real> nodes() const {
    return std::vector<Real>(omega.begin(), omega.end());
  }
};

/// A function given by evaluators of its derivatives 0..order. This is also how
/// elements of the abstract completion are fed in: the tuple of derivative
/// values at the nodes plus an L^p density for the top derivative.
template <std::floating_point Real = long double>
struct sampled_function {
  std::string name;
  std::vector<std::function<Real(Real)>> derivatives;

  int order() const noexcept { return static_cast<int>(derivatives.size()) - 1; }
  Real operator()(int k, Real x) const { return derivatives.at(static_cast<std::size_t>(k))(x); }

  void require_order(int ell) const {
    detail::require(order() >= ell, error_code::invalid_config,
                    "function '" + name + "' provides derivatives up to order " + std::to_string(order()) +
                        ", need " + std::to_string(ell));
  }
};

template <std::floating_point Real>
sampled_function<Real> from_polynomial(const basic_polynomial<Real>& poly, int order, std::string name = "polynomial") {
  sampled_function<Real> f{std::move(name), {}};
  basic_polynomial<Real> d = poly;
  for (int k = 0; k <= order; ++k) {
    f.derivatives.emplace_back([d](Real x) { return eval(d, x); });
    d = derivative(d);
  }
  return f;
}

/// f - P, derivative by derivative.
template <std::floating_point Real>
sampled_function<Real> subtract(const sampled_function<Real>& f, const basic_polynomial<Real>& poly) {
  sampled_function<Real> r{f.name + " - polynomial", {}};
  basic_polynomial<Real> d = poly;
  for (int k = 0; k <= f.order(); ++k) {
    r.derivatives.emplace_back([fk = f.derivatives[k], d](Real x) { return fk(x) - eval(d, x); });
    d = derivative(d);
  }
  return r;
}

/// q_n: G_{omega,n} for n < ell, otherwise the ell-fold integral of p_{n-ell}
/// with lower limits omega_{ell-1} (innermost) ... omega_0 (outermost).
template <std::floating_point Real = long double>
basic_polynomial<Real> sobolev_basis(const sobolev_config& cfg, int n, int cap = default_degree_cap) {
  cfg.validate();
  detail::check_degree(n, cap, "sobolev_basis");
  const auto nodes = cfg.nodes<Real>();
  if (n < cfg.ell) return goncharov_poly<Real>(nodes, n);
  return iterated_antiderivative(orthonormal_jacobi<Real>(cfg.jacobi(), n - cfg.ell, cap),
                                 std::span<const Real>(nodes));
}

template <std::floating_point Real = long double>
std::vector<basic_polynomial<Real>> sobolev_basis_set(const sobolev_config& cfg, int n_max,
                                                      int cap = default_degree_cap) {
  std::vector<basic_polynomial<Real>> q;
  q.reserve(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) q.push_back(sobolev_basis<Real>(cfg, n, cap));
  return q;
}

/// Sobolev inner product of two polynomials, using the Gauss-Jacobi rule of
/// size ceil((deg f + deg g) / 2) + 1, which is exact here.
template <std::floating_point Real = long double>
Real sobolev_inner_product(const sobolev_config& cfg, const basic_polynomial<Real>& f,
                           const basic_polynomial<Real>& g) {
  cfg.validate();
  Real sum = 0;
  basic_polynomial<Real> df = f;
  basic_polynomial<Real> dg = g;
  for (int k = 0; k < cfg.ell; ++k) {
    const Real w = cfg.omega[k];
    sum += eval(df, w) * eval(dg, w);
    df = derivative(df);
    dg = derivative(dg);
  }
  if (df.is_zero() || dg.is_zero()) return sum;
  const int m = std::min(max_rule_size, (f.degree() + g.degree() + 1) / 2 + 1);
  const auto rule = shared_gauss_jacobi_rule<Real>(cfg.jacobi(), m);
  return sum + integrate(*rule, [&](Real x) { return eval(df, x) * eval(dg, x); });
}

/// Sobolev inner product of sampled functions; the integral part is adaptive.
template <std::floating_point Real = long double>
Real sobolev_inner_product(const sobolev_config& cfg, const sampled_function<Real>& f,
                           const sampled_function<Real>& g, const quadrature_policy<Real>& policy = {}) {
  cfg.validate();
  f.require_order(cfg.ell);
  g.require_order(cfg.ell);
  Real sum = 0;
  for (int k = 0; k < cfg.ell; ++k) sum += f(k, cfg.omega[k]) * g(k, cfg.omega[k]);
  const int ell = cfg.ell;
  const auto r = integrate_adaptive<Real>(
      cfg.jacobi(), [&](Real x) { return f(ell, x) * g(ell, x); }, policy.rel_tol, tolerance_scale::magnitude);
  return sum + detail::accept(r, policy, "sobolev_inner_product");
}

template <std::floating_point Real = long double>
Real sobolev_inner_product(const sobolev_config& cfg, const sampled_function<Real>& f,
                           const basic_polynomial<Real>& g, const quadrature_policy<Real>& policy = {}) {
  return sobolev_inner_product<Real>(cfg, f, from_polynomial(g, cfg.ell), policy);
}

/// ||f||_{S,p}.
template <std::floating_point Real = long double>
Real sobolev_norm(const sobolev_config& cfg, const sampled_function<Real>& f,
                  const quadrature_policy<Real>& policy = {}) {
  cfg.validate();
  f.require_order(cfg.ell);
  const Real p = cfg.p;
  Real sum = 0;
  for (int k = 0; k < cfg.ell; ++k) sum += std::pow(std::fabs(f(k, cfg.omega[k])), p);
  const int ell = cfg.ell;
  const auto r = integrate_adaptive<Real>(
      cfg.jacobi(), [&](Real x) { return std::pow(std::fabs(f(ell, x)), p); }, policy.rel_tol);
  sum += detail::accept(r, policy, "sobolev_norm");
  return std::pow(sum, Real(1) / p);
}

template <std::floating_point Real = long double>
Real sobolev_norm(const sobolev_config& cfg, const basic_polynomial<Real>& f,
                  const quadrature_policy<Real>& policy = {}) {
  return sobolev_norm<Real>(cfg, from_polynomial(f, cfg.ell), policy);
}

/// <f, q_n>_S read off without forming the inner product: f^{(n)}(omega_n)
/// for n < ell, <f^{(ell)}, p_{n-ell}> in L^2(mu) otherwise.
template <std::floating_point Real = long double>
Real sobolev_fourier_coefficient(const sobolev_config& cfg, const sampled_function<Real>& f, int n,
                                 const quadrature_policy<Real>& policy = {}) {
  cfg.validate();
  f.require_order(cfg.ell);
  detail::require(n >= 0, error_code::invalid_config, "sobolev_fourier_coefficient: n must be >= 0");
  if (n < cfg.ell) return f(n, cfg.omega[n]);
  const int ell = cfg.ell;
  return jacobi_fourier_coefficient<Real>(cfg.jacobi(), [&](Real x) { return f(ell, x); }, n - ell, policy);
}

/// Sum_{k<=n} <f, q_k>_S q_k as one polynomial.
template <std::floating_point Real = long double>
basic_polynomial<Real> sobolev_partial_sum(const sobolev_config& cfg, const sampled_function<Real>& f, int n,
                                           const quadrature_policy<Real>& policy = {}) {
  basic_polynomial<Real> sum;
  for (int k = 0; k <= n; ++k)
    sum = sum + sobolev_fourier_coefficient<Real>(cfg, f, k, policy) * sobolev_basis<Real>(cfg, k);
  return sum;
}

/// Coefficients and error curve ||f - S_n f||_{S,p}, n = 0..N.
template <std::floating_point Real = long double>
struct expansion_report {
  sobolev_config config;
  std::string function_name;
  std::vector<Real> coefficients;
  std::vector<Real> errors;
  std::vector<double> quad_tol_achieved;  // worst relative gap among the integrals behind row n
  int non_converged = 0;
};

/// Builds the report. Quadrature shortfalls (rough f) are recorded per row, never thrown.
template <std::floating_point Real = long double>
expansion_report<Real> expand(const sobolev_config& cfg, const sampled_function<Real>& f, int n_max,
                              Real rel_tol = Real(1e-10), int cap = default_degree_cap) {
  cfg.validate();
  f.require_order(cfg.ell);
  detail::check_degree(n_max, cap, "expand");
  const auto q = sobolev_basis_set<Real>(cfg, n_max, cap);
  const int ell = cfg.ell;
  const Real p = cfg.p;

  expansion_report<Real> report{cfg, f.name, {}, {}, {}, 0};
  basic_polynomial<Real> partial;
  for (int n = 0; n <= n_max; ++n) {
    quadrature_diagnostics diag;
    const quadrature_policy<Real> policy{rel_tol, false, &diag};
    const Real c = sobolev_fourier_coefficient<Real>(cfg, f, n, policy);
    partial = partial + c * q[n];

    Real sum = 0;
    basic_polynomial<Real> d = partial;
    for (int k = 0; k < ell; ++k) {
      const Real w = cfg.omega[k];
      sum += std::pow(std::fabs(f(k, w) - eval(d, w)), p);
      d = derivative(d);
    }
    const auto r = integrate_adaptive<Real>(
        cfg.jacobi(), [&](Real x) { return std::pow(std::fabs(f(ell, x) - eval(d, x)), p); }, rel_tol);
    diag.record(r);
    sum += r.value;

    report.coefficients.push_back(c);
    report.errors.push_back(std::pow(sum, Real(1) / p));
    report.quad_tol_achieved.push_back(diag.worst_tol);
    report.non_converged += diag.non_converged;
  }
  return report;
}

/// 17-significant-digit decimal, the CSV number format.
inline std::string format_decimal(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// CSV with header n,coefficient,error_Sp,quad_tol_achieved.
template <std::floating_point Real>
void write_csv(std::ostream& out, const expansion_report<Real>& report) {
  out << "n,coefficient,error_Sp,quad_tol_achieved\n";
  for (std::size_t n = 0; n < report.coefficients.size(); ++n) {
    out << n << ',' << format_decimal(static_cast<double>(report.coefficients[n])) << ','
        << format_decimal(static_cast<double>(report.errors[n])) << ','
        << format_decimal(report.quad_tol_achieved[n]) << '\n';
  }
}

/// max_n ||S_n f||_{S,p} / ||f||_{S,p} over n = 0..N: an empirical lower
/// bound for the uniform constant C_1 bounding the partial-sum operators.
template <std::floating_point Real = long double>
Real partial_sum_norm_ratio(const sobolev_config& cfg, const sampled_function<Real>& f, int n_max,
                            Real rel_tol = Real(1e-10)) {
  const quadrature_policy<Real> policy{rel_tol, false, nullptr};
  const Real norm_f = sobolev_norm<Real>(cfg, f, policy);
  detail::require(norm_f > 0, error_code::invalid_config, "partial_sum_norm_ratio: f has zero norm");
  const auto q = sobolev_basis_set<Real>(cfg, n_max);
  basic_polynomial<Real> partial;
  Real worst = 0;
  for (int n = 0; n <= n_max; ++n) {
    partial = partial + sobolev_fourier_coefficient<Real>(cfg, f, n, policy) * q[n];
    worst = std::max(worst, sobolev_norm<Real>(cfg, partial, policy) / norm_f);
  }
  return worst;
}

}  // namespace jsob

#endif  // JSOB_SOBOLEV_HPP
