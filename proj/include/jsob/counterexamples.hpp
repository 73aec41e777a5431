#ifndef JSOB_COUNTEREXAMPLES_HPP
#define JSOB_COUNTEREXAMPLES_HPP

#include <cmath>
#include <concepts>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "jsob/error.hpp"
#include "jsob/goncharov.hpp"
#include "jsob/polynomial.hpp"
#include "jsob/quadrature.hpp"
#include "jsob/regions.hpp"
#include "jsob/sobolev.hpp"

namespace jsob {

inline constexpr int lambda_table_max = 25;

/// lambda_{m,k}, 0 <= k <= m <= m_max, from lambda_{0,0} = 1 and
/// lambda_{n+1,k} = (n+1) lambda_{n,k} + k lambda_{n,k-1}.
template <std::floating_point Real = long double>
class lambda_table {
 public:
  explicit lambda_table(int m_max) {
    detail::require(m_max >= 0 && m_max <= lambda_table_max, error_code::invalid_config,
                    "lambda_table: m_max must be in [0, " + std::to_string(lambda_table_max) + "] (got " +
                        std::to_string(m_max) + ")");
    rows_.push_back({Real(1)});
    for (int n = 0; n < m_max; ++n) {
      const auto& prev = rows_.back();
      std::vector<Real> next(static_cast<std::size_t>(n) + 2, Real(0));
      for (int k = 0; k <= n + 1; ++k) {
        const Real keep = k <= n ? Real(n + 1) * prev[k] : Real(0);
        const Real shift = k >= 1 ? Real(k) * prev[k - 1] : Real(0);
        next[k] = keep + shift;
      }
      rows_.push_back(std::move(next));
    }
  }

  int max_order() const noexcept { return static_cast<int>(rows_.size()) - 1; }
  Real operator()(int m, int k) const { return rows_.at(static_cast<std::size_t>(m)).at(static_cast<std::size_t>(k)); }
  std::span<const Real> row(int m) const { return rows_.at(static_cast<std::size_t>(m)); }

 private:
  std::vector<std::vector<Real>> rows_;
};

namespace detail {

template <std::floating_point Real>
const lambda_table<Real>& shared_lambda_table() {
  static const lambda_table<Real> table(lambda_table_max);
  return table;
}

// sum_k lambda_{m,k} / L^k by Horner in 1/L.
template <std::floating_point Real>
Real lambda_sum(int m, Real inv_log) {
  const auto row = shared_lambda_table<Real>().row(m);
  Real s = 0;
  for (int k = m; k >= 0; --k) s = s * inv_log + row[k];
  return s;
}

inline void require_sign(int sign) {
  require(sign == 1 || sign == -1, error_code::invalid_config, "sign must be +1 or -1");
}

}  // namespace detail

/// m-th derivative of 1/((1 + sign x) ln(1 + sign x)) in closed form.
template <std::floating_point Real = long double>
Real log_derivative(int sign, int m, Real x) {
  detail::require_sign(sign);
  detail::require(m >= 0 && m <= lambda_table_max, error_code::invalid_config,
                  "log_derivative: m must be in [0, " + std::to_string(lambda_table_max) + "]");
  const Real u = Real(1) + Real(sign) * x;
  detail::require(u > 0 && u != Real(1), error_code::domain,
                  "log_derivative: 1 " + std::string(sign > 0 ? "+" : "-") +
                      " x must be positive and different from 1");
  const Real log_u = std::log(u);
  const Real lead = (m % 2 == 1 && sign > 0) ? Real(-1) : Real(1);  // (-sign)^m
  return lead / (std::pow(u, Real(m + 1)) * log_u) * detail::lambda_sum<Real>(m, Real(1) / log_u);
}

/// Parameters of the singular functions phi_{+m} (near x = 1, governed by
/// alpha) and phi_{-m} (near x = -1, governed by beta).
struct phi_params {
  int sign = 1;
  int m = 1;
  double alpha = 0.0;
  double beta = 0.0;
  double p = 2.0;

  double exponent() const noexcept { return sign > 0 ? alpha : beta; }

  /// True on the log-log branch (governing exponent equal to mp - 1).
  bool critical() const { return detail::compare(exponent(), m * p - 1.0) == 0; }

  void validate() const {
    detail::require_sign(sign);
    jacobi_params{alpha, beta}.validate();
    detail::require(m >= 1 && m <= lambda_table_max, error_code::invalid_config,
                    "phi: m must be in [1, " + std::to_string(lambda_table_max) + "]");
    detail::require(std::isfinite(p) && p >= 1.0, error_code::invalid_config, "phi: p must be >= 1");
    const double t = m * p - 1.0;
    const int c = detail::compare(exponent(), t);
    const bool ok = p > 1.0 ? c >= 0 : c > 0;
    detail::require(ok, error_code::invalid_config,
                    std::string("phi: hypothesis fails, need ") + (sign > 0 ? "alpha" : "beta") +
                        (p > 1.0 ? " >= " : " > ") + format_shortest(t) + " (got " + format_shortest(exponent()) +
                        ")");
  }
};

namespace detail {
template <std::floating_point Real>
Real phi_from_gap(const phi_params& params, Real one_minus);
}  // namespace detail

/// phi_{sign m}(x): the m-th derivative of ln(ln(1/(1 - sign x))) on the
/// critical branch, of ln(1/(1 - sign x)) otherwise. x must lie strictly
/// between 0 and sign.
template <std::floating_point Real = long double>
Real phi(const phi_params& params, Real x) {
  params.validate();
  const Real y = Real(params.sign) * x;  // phi_{-m}(x) = (-1)^m phi_m(-x)
  detail::require(y > 0 && y < 1, error_code::domain,
                  "phi: x must lie in " + std::string(params.sign > 0 ? "(0, 1)" : "(-1, 0)"));
  return detail::phi_from_gap(params, Real(1) - y);
}

namespace detail {

// phi_{sign m} at the point whose distance to sign is v = 1 - sign x; callers
// near the endpoint pass v directly to keep its relative precision.
template <std::floating_point Real>
Real phi_from_gap(const phi_params& params, Real one_minus) {
  const int m = params.m;
  const Real mirror = (params.sign < 0 && m % 2 == 1) ? Real(-1) : Real(1);
  if (!params.critical()) {
    Real fact = 1;
    for (int i = 2; i < m; ++i) fact *= Real(i);
    return mirror * fact / std::pow(one_minus, Real(m));
  }
  // d/dx ln ln(1/(1-x)) = -1/((1-x) ln(1-x)); differentiate m-1 more times.
  const Real log_v = std::log(one_minus);
  return -mirror / (std::pow(one_minus, Real(m)) * log_v) * lambda_sum<Real>(m - 1, Real(1) / log_v);
}

}  // namespace detail

namespace detail {

// Dyadic break points a, 1 - (1-a)/2, 1 - (1-a)/4, ... cut at x; phi varies by
// a bounded factor on each piece.
template <std::floating_point Real>
std::vector<Real> dyadic_breaks(Real a, Real x) {
  std::vector<Real> pts{a};
  Real gap = (Real(1) - a) / 2;
  while (Real(1) - gap < x) {
    pts.push_back(Real(1) - gap);
    gap /= 2;
  }
  pts.push_back(x);
  return pts;
}

// int_a^x f, where f takes the gap v = 1 - t. Each dyadic piece is integrated
// in v so nodes near t = 1 keep full relative precision.
template <std::floating_point Real, class F>
Real integrate_dyadic(Real a, Real x, F&& f, Real rel_tol, const char* what) {
  Real total = 0;
  const auto pts = dyadic_breaks(a, x);
  const quadrature_policy<Real> policy{rel_tol, true, nullptr};
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i + 1] > pts[i])) continue;
    total += accept(integrate_interval_adaptive<Real>(Real(1) - pts[i + 1], Real(1) - pts[i], f, rel_tol), policy,
                    what);
  }
  return total;
}

}  // namespace detail

/// int_{sign a}^{x} int_{sign a}^{x_1} ... phi_{sign m}(x_m) dx_m ... dx_1, by
/// Cauchy's formula int (x - t)^{m-1}/(m-1)! phi(t) dt.
template <std::floating_point Real = long double>
Real iterated_integral_of_phi(const phi_params& params, Real a, Real x, Real rel_tol = Real(1e-12)) {
  params.validate();
  detail::require(a > 0 && a < 1, error_code::invalid_config, "iterated_integral_of_phi: a must lie in (0, 1)");
  // With y = sign x the mirrored integral equals the phi_m one.
  const Real y = Real(params.sign) * x;
  detail::require(y >= a && y < 1, error_code::domain,
                  "iterated_integral_of_phi: x must lie between sign*a and sign");
  if (y == a) return Real(0);
  phi_params plus = params;
  if (params.sign < 0) {
    plus.sign = 1;
    std::swap(plus.alpha, plus.beta);
  }
  const int m = params.m;
  Real fact = 1;
  for (int i = 2; i < m; ++i) fact *= Real(i);
  plus.validate();
  const Real gap_y = Real(1) - y;
  auto kernel = [&](Real v) { return std::pow(v - gap_y, Real(m - 1)) / fact * detail::phi_from_gap<Real>(plus, v); };
  return detail::integrate_dyadic<Real>(a, y, kernel, rel_tol, "iterated_integral_of_phi");
}

/// int |phi_{sign m}|^p d mu^{alpha,beta} over [lo, hi] (mirrored for sign = -1), directly.
template <std::floating_point Real = long double>
Real phi_lp_integral(const phi_params& params, Real lo, Real hi, Real rel_tol = Real(1e-12)) {
  params.validate();
  phi_params plus = params;
  if (params.sign < 0) {
    plus.sign = 1;
    std::swap(plus.alpha, plus.beta);
    std::swap(lo, hi);
    lo = -lo;
    hi = -hi;
  }
  detail::require(lo > 0 && hi > lo && hi < 1, error_code::domain,
                  "phi_lp_integral: need 0 < lo < hi < 1 on the mirrored side");
  const Real p = plus.p;
  plus.validate();
  const Real alpha = plus.alpha, beta = plus.beta;
  auto integrand = [&](Real v) {
    return std::pow(std::fabs(detail::phi_from_gap<Real>(plus, v)), p) * std::pow(v, alpha) *
           std::pow(Real(2) - v, beta);
  };
  return detail::integrate_dyadic<Real>(lo, hi, integrand, rel_tol, "phi_lp_integral");
}

/// int_{x_lo}^{1} |phi_{m}|^p d mu^{alpha,beta} (or int_{-1}^{x_lo} for sign = -1),
/// with the endpoint singularity absorbed into a Gauss-Jacobi weight.
template <std::floating_point Real = long double>
Real phi_tail_integral(const phi_params& params, Real x_lo, Real rel_tol = Real(1e-12)) {
  params.validate();
  phi_params plus = params;
  if (params.sign < 0) {
    plus.sign = 1;
    std::swap(plus.alpha, plus.beta);
    x_lo = -x_lo;
  }
  detail::require(x_lo > 0 && x_lo < 1, error_code::domain, "phi_tail_integral: x must lie strictly inside (0, 1)");
  const int m = plus.m;
  const Real p = plus.p;
  const Real beta = plus.beta;
  const quadrature_policy<Real> policy{rel_tol, true, nullptr};
  if (!plus.critical()) {
    // |phi|^p w = ((m-1)!)^p (1-x)^{alpha - mp} (1+x)^beta.
    Real fact = 1;
    for (int i = 2; i < m; ++i) fact *= Real(i);
    const Real c = std::pow(fact, p);
    const jacobi_params ex{plus.alpha - m * plus.p, 0.0};
    const auto r = integrate_interval_adaptive<Real>(
        x_lo, Real(1), [&](Real t) { return c * std::pow(Real(1) + t, beta); }, rel_tol, ex);
    return detail::accept(r, policy, "phi_tail_integral");
  }
  // With y = ln(1/(1-x)) and u = 1/y the integral becomes
  //   int_0^{1/Y} u^{p-2} |sum_k lambda_{m-1,k} (-u)^k|^p (2 - e^{-1/u})^beta du.
  const Real upper = Real(1) / -std::log1p(-x_lo);
  auto f = [&](Real u) {
    const Real s = detail::lambda_sum<Real>(m - 1, -u);
    const Real tail = u > 0 ? std::exp(-Real(1) / u) : Real(0);
    return std::pow(std::fabs(s), p) * std::pow(Real(2) - tail, beta);
  };
  const jacobi_params ex{0.0, plus.p - 2.0};
  return detail::accept(integrate_interval_adaptive<Real>(Real(0), upper, f, rel_tol, ex), policy,
                        "phi_tail_integral");
}

/// A_{omega, f(omega)} plus the ell-fold integral of p_approx with lower limits
/// omega: matches f's node data and has ell-th derivative p_approx.
template <std::floating_point Real = long double>
basic_polynomial<Real> dense_approximant(const sobolev_config& cfg, const sampled_function<Real>& f,
                                         const basic_polynomial<Real>& p_approx) {
  cfg.validate();
  f.require_order(cfg.ell - 1);
  const auto nodes = cfg.nodes<Real>();
  std::vector<Real> values(nodes.size());
  for (std::size_t k = 0; k < nodes.size(); ++k) values[k] = f(static_cast<int>(k), nodes[k]);
  return abel_goncharov_interpolant<Real>(nodes, values) +
         iterated_antiderivative(p_approx, std::span<const Real>(nodes));
}

struct demo_row {
  int j = 0;
  long double x = 0;      // 1 - 2^{-j}
  long double value = 0;  // m-fold integral of phi_m from 1/2 to x
  long double tail = 0;   // int_x^1 |phi_m|^p d mu
};

inline constexpr int demo_max_steps = 60;

/// Tabulates the divergence witness near x = 1 with a = 1/2 and x_j = 1 - 2^{-j}.
/// Runs only where the node omega_{ell-m} = 1 would break completeness.
inline std::vector<demo_row> incompleteness_demo(double alpha, double beta, double p, int ell, int m, int steps,
                                                 long double rel_tol = 1e-12L) {
  jacobi_params{alpha, beta}.validate();
  detail::require(ell >= 2, error_code::invalid_config, "incompleteness_demo: needs ell >= 2");
  detail::require(m >= 1 && m <= ell - 1, error_code::invalid_config,
                  "incompleteness_demo: m must be in [1, ell-1] (got m=" + std::to_string(m) + ")");
  detail::require(steps >= 1 && steps <= demo_max_steps, error_code::invalid_config,
                  "incompleteness_demo: steps must be in [1, " + std::to_string(demo_max_steps) + "]");
  detail::require(!admissible_nodes(alpha, beta, p, m).contains(1.0), error_code::invalid_config,
                  "incompleteness_demo: omega_" + std::to_string(ell - m) +
                      " = 1 is admissible here, the space is complete at this node");
  const phi_params params{1, m, alpha, beta, p};
  params.validate();
  const long double a = 0.5L;
  std::vector<demo_row> rows;
  for (int j = 1; j <= steps; ++j) {
    demo_row r;
    r.j = j;
    r.x = 1.0L - std::ldexp(1.0L, -j);
    r.value = iterated_integral_of_phi<long double>(params, a, r.x, rel_tol);
    r.tail = phi_tail_integral<long double>(params, r.x, rel_tol);
    rows.push_back(r);
  }
  return rows;
}

inline void write_demo_csv(std::ostream& out, const std::vector<demo_row>& rows) {
  out << "j,x,iterated_integral_value,tail_integral\n";
  for (const auto& r : rows)
    out << r.j << ',' << format_decimal(static_cast<double>(r.x)) << ','
        << format_decimal(static_cast<double>(r.value)) << ',' << format_decimal(static_cast<double>(r.tail))
        << '\n';
}

}  // namespace jsob

#endif  // JSOB_COUNTEREXAMPLES_HPP
