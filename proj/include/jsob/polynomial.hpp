#ifndef JSOB_POLYNOMIAL_HPP
#define JSOB_POLYNOMIAL_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "jsob/error.hpp"

namespace jsob {

/// Default hard cap on the degree of constructed polynomials. Orthonormality
/// tolerances are only verified up to degree ~30; beyond that the monomial
/// basis is ill-conditioned.
inline constexpr int default_degree_cap = 64;

/// Dense univariate polynomial, coeffs[i] multiplies x^i.
///
/// Invariants: at least one coefficient; the leading coefficient is nonzero
/// unless the polynomial is zero; all coefficients finite. Coefficients with
/// |c| <= 1e-300 at the top are trimmed, nothing else is.
template <std::floating_point Real>
class basic_polynomial {
 public:
  using value_type = Real;

  basic_polynomial() : coeffs_{Real(0)} {}

  basic_polynomial(std::initializer_list<Real> coeffs)
      : basic_polynomial(std::vector<Real>(coeffs)) {}

  explicit basic_polynomial(std::vector<Real> coeffs) : coeffs_(std::move(coeffs)) {
    for (const Real c : coeffs_) {
      detail::require(std::isfinite(c), error_code::invalid_config,
                      "polynomial: coefficients must be finite");
    }
    normalize();
  }

  static basic_polynomial constant(Real c) { return basic_polynomial(std::vector<Real>{c}); }

  static basic_polynomial monomial(std::size_t k, Real c = Real(1)) {
    std::vector<Real> v(k + 1, Real(0));
    v[k] = c;
    return basic_polynomial(std::move(v));
  }

  /// Degree; the zero polynomial reports degree 0.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == Real(0); }
  std::span<const Real> coeffs() const noexcept { return coeffs_; }
  Real operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : Real(0); }
  Real leading() const noexcept { return coeffs_.back(); }

  Real max_abs_coeff() const noexcept {
    Real m = 0;
    for (const Real c : coeffs_) m = std::max(m, std::fabs(c));
    return m;
  }

  template <std::floating_point Other>
  basic_polynomial<Other> cast() const {
    return basic_polynomial<Other>(std::vector<Other>(coeffs_.begin(), coeffs_.end()));
  }

  friend bool operator==(const basic_polynomial&, const basic_polynomial&) = default;

 private:
  void normalize() {
    while (coeffs_.size() > 1 && std::fabs(coeffs_.back()) <= Real(1e-300)) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(Real(0));
    if (coeffs_.size() == 1 && std::fabs(coeffs_[0]) <= Real(1e-300)) coeffs_[0] = Real(0);
  }

  std::vector<Real> coeffs_;
};

using polynomial = basic_polynomial<long double>;

namespace detail {

// Error-free transformations used by the compensated Horner scheme.
template <std::floating_point Real>
inline std::pair<Real, Real> two_sum(Real a, Real b) {
  const Real s = a + b;
  const Real z = s - a;
  return {s, (a - (s - z)) + (b - z)};
}

template <std::floating_point Real>
inline std::pair<Real, Real> two_product(Real a, Real b) {
  const Real p = a * b;
  return {p, std::fma(a, b, -p)};
}

}  // namespace detail

/// P(x) by compensated Horner; as accurate as Horner in twice the working precision.
template <std::floating_point Real>
Real eval(const basic_polynomial<Real>& poly, Real x) {
  const auto c = poly.coeffs();
  Real s = c.back();
  Real err = 0;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    const auto [p, pi] = detail::two_product(s, x);
    const auto [t, sigma] = detail::two_sum(p, c[i]);
    s = t;
    err = err * x + (pi + sigma);
  }
  return s + err;
}

template <std::floating_point Real>
basic_polynomial<Real> derivative(const basic_polynomial<Real>& poly) {
  const auto c = poly.coeffs();
  if (c.size() == 1) return {};
  std::vector<Real> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = Real(i) * c[i];
  return basic_polynomial<Real>(std::move(d));
}

template <std::floating_point Real>
basic_polynomial<Real> derivative(const basic_polynomial<Real>& poly, int order) {
  basic_polynomial<Real> d = poly;
  for (int k = 0; k < order; ++k) d = derivative(d);
  return d;
}

/// Q with Q' = P and Q(a) = 0.
template <std::floating_point Real>
basic_polynomial<Real> antiderivative_from(const basic_polynomial<Real>& poly, Real a) {
  detail::require(std::isfinite(a), error_code::invalid_config,
                  "antiderivative_from: lower limit must be finite");
  const auto c = poly.coeffs();
  std::vector<Real> q(c.size() + 1, Real(0));
  for (std::size_t i = 0; i < c.size(); ++i) q[i + 1] = c[i] / Real(i + 1);
  const Real at_a = eval(basic_polynomial<Real>(q), a);
  q[0] = -at_a;
  return basic_polynomial<Real>(std::move(q));
}

/// Iterated integral with lower limits given outermost first: limits = (x_0, ..., x_{k-1})
/// yields  int_{x_0}^s int_{x_1}^{s_1} ... int_{x_{k-1}}^{s_{k-1}} P.
template <std::floating_point Real>
basic_polynomial<Real> iterated_antiderivative(const basic_polynomial<Real>& poly,
                                               std::span<const Real> limits) {
  basic_polynomial<Real> q = poly;
  for (std::size_t i = limits.size(); i-- > 0;) q = antiderivative_from(q, limits[i]);
  return q;
}

template <std::floating_point Real>
basic_polynomial<Real> operator+(const basic_polynomial<Real>& a, const basic_polynomial<Real>& b) {
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  std::vector<Real> r(std::max(ca.size(), cb.size()), Real(0));
  for (std::size_t i = 0; i < ca.size(); ++i) r[i] += ca[i];
  for (std::size_t i = 0; i < cb.size(); ++i) r[i] += cb[i];
  return basic_polynomial<Real>(std::move(r));
}

template <std::floating_point Real>
basic_polynomial<Real> operator*(Real s, const basic_polynomial<Real>& a) {
  std::vector<Real> r(a.coeffs().begin(), a.coeffs().end());
  for (Real& c : r) c *= s;
  return basic_polynomial<Real>(std::move(r));
}

template <std::floating_point Real>
basic_polynomial<Real> operator*(const basic_polynomial<Real>& a, Real s) {
  return s * a;
}

template <std::floating_point Real>
basic_polynomial<Real> operator-(const basic_polynomial<Real>& a, const basic_polynomial<Real>& b) {
  return a + Real(-1) * b;
}

template <std::floating_point Real>
basic_polynomial<Real> operator*(const basic_polynomial<Real>& a, const basic_polynomial<Real>& b) {
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  std::vector<Real> r(ca.size() + cb.size() - 1, Real(0));
  for (std::size_t i = 0; i < ca.size(); ++i)
    for (std::size_t j = 0; j < cb.size(); ++j) r[i + j] += ca[i] * cb[j];
  return basic_polynomial<Real>(std::move(r));
}

template <std::floating_point Real>
basic_polynomial<Real> add(const basic_polynomial<Real>& a, const basic_polynomial<Real>& b) {
  return a + b;
}

template <std::floating_point Real>
basic_polynomial<Real> scale(const basic_polynomial<Real>& a, Real s) {
  return s * a;
}

template <std::floating_point Real>
basic_polynomial<Real> multiply(const basic_polynomial<Real>& a, const basic_polynomial<Real>& b) {
  return a * b;
}

/// Shortest decimal that round-trips the value as a double.
inline std::string format_shortest(double v) { return detail::show(v); }

/// Textual form "[c0, c1, ...]", lowest degree first. Coefficients are
/// printed as the shortest decimal that round-trips the double nearest to
/// each coefficient.
template <std::floating_point Real>
std::string to_string(const basic_polynomial<Real>& poly) {
  std::string out = "[";
  const auto c = poly.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ", ";
    out += format_shortest(static_cast<double>(c[i]));
  }
  out += "]";
  return out;
}

/// Parses the textual form; surrounding brackets are optional.
template <std::floating_point Real = long double>
basic_polynomial<Real> parse_polynomial(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r'))
      s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '[') {
    detail::require(text.back() == ']', error_code::invalid_config,
                    "parse_polynomial: unbalanced bracket");
    text = trim(text.substr(1, text.size() - 2));
  }
  detail::require(!text.empty(), error_code::invalid_config, "parse_polynomial: empty input");
  std::vector<Real> coeffs;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    double v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    detail::require(res.ec == std::errc{} && res.ptr == item.data() + item.size(),
                    error_code::invalid_config,
                    "parse_polynomial: bad coefficient '" + std::string(item) + "'");
    coeffs.push_back(static_cast<Real>(v));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return basic_polynomial<Real>(std::move(coeffs));
}

}  // namespace jsob

#endif  // JSOB_POLYNOMIAL_HPP
