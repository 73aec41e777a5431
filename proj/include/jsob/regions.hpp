#ifndef JSOB_REGIONS_HPP
#define JSOB_REGIONS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "jsob/error.hpp"
#include "jsob/rational.hpp"
#include "jsob/sobolev.hpp"

namespace jsob {

// ---------------------------------------------------------------------------
// Interval sets

/// One interval of the extended real line; infinite ends are always open.
struct interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool empty() const noexcept { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(double x) const noexcept {
    return (x > lo || (lo_closed && x == lo)) && (x < hi || (hi_closed && x == hi));
  }
  friend bool operator==(const interval&, const interval&) = default;
};

/// Finite union of disjoint intervals, kept sorted and merged.
class interval_set {
 public:
  interval_set() = default;
  explicit interval_set(std::vector<interval> parts) : parts_(std::move(parts)) { normalize(); }

  static interval_set real_line() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return interval_set({{-inf, inf, false, false}});
  }

  const std::vector<interval>& parts() const noexcept { return parts_; }
  bool empty() const noexcept { return parts_.empty(); }

  bool contains(double x) const noexcept {
    return std::any_of(parts_.begin(), parts_.end(), [x](const interval& i) { return i.contains(x); });
  }

  interval_set without_point(double x) const {
    std::vector<interval> out;
    for (const auto& i : parts_) {
      if (!i.contains(x)) {
        out.push_back(i);
        continue;
      }
      out.push_back({i.lo, x, i.lo_closed, false});
      out.push_back({x, i.hi, false, i.hi_closed});
    }
    return interval_set(std::move(out));
  }

  /// "[-1, 1]", "(-inf, -1) U (-1, inf)", "{}" when empty.
  std::string to_string() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (const auto& i : parts_) {
      if (!s.empty()) s += " U ";
      s += i.lo_closed ? '[' : '(';
      s += bound(i.lo) + ", " + bound(i.hi);
      s += i.hi_closed ? ']' : ')';
    }
    return s;
  }

  friend bool operator==(const interval_set&, const interval_set&) = default;

 private:
  static std::string bound(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return format_shortest(v);
  }

  void normalize() {
    std::erase_if(parts_, [](const interval& i) { return i.empty(); });
    for (auto& i : parts_) {
      if (std::isinf(i.lo)) i.lo_closed = false;
      if (std::isinf(i.hi)) i.hi_closed = false;
    }
    std::sort(parts_.begin(), parts_.end(), [](const interval& a, const interval& b) {
      return a.lo < b.lo || (a.lo == b.lo && a.lo_closed && !b.lo_closed);
    });
    std::vector<interval> merged;
    for (const auto& i : parts_) {
      if (!merged.empty()) {
        auto& last = merged.back();
        const bool touches = i.lo < last.hi || (i.lo == last.hi && (i.lo_closed || last.hi_closed));
        if (touches) {
          if (i.hi > last.hi) {
            last.hi = i.hi;
            last.hi_closed = i.hi_closed;
          } else if (i.hi == last.hi) {
            last.hi_closed = last.hi_closed || i.hi_closed;
          }
          continue;
        }
      }
      merged.push_back(i);
    }
    parts_ = std::move(merged);
  }

  std::vector<interval> parts_;
};

// ---------------------------------------------------------------------------
// Comparisons: exact on rationals, 1e-12 relative on doubles.

namespace detail {

inline constexpr double region_tolerance = 1e-12;

inline int compare(double a, double b) {
  const double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  if (std::fabs(a - b) <= region_tolerance * scale) return 0;
  return a < b ? -1 : 1;
}

inline int compare(const rational& a, const rational& b) {
  const auto c = a <=> b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

template <class Num>
Num max_of(const Num& a, const Num& b) {
  return compare(a, b) >= 0 ? a : b;
}

template <class Num>
Num min_of(const Num& a, const Num& b) {
  return compare(a, b) <= 0 ? a : b;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Convergence regions

/// (M, m); upper is +inf when its defining denominator vanishes.
struct region_bounds {
  double lower = 0.0;
  double upper = 0.0;
  friend bool operator==(const region_bounds&, const region_bounds&) = default;
};

/// Exact counterpart; an empty `upper` means +inf.
struct exact_region_bounds {
  rational lower;
  std::optional<rational> upper;
  friend bool operator==(const exact_region_bounds&, const exact_region_bounds&) = default;
};

namespace detail {

// 4 max{(a+1)/(2a+3), (b+1)/(2b+3)} and 4 min{(a+1)/(2a+1), (b+1)/(2b+1)}.
template <class Num>
std::pair<Num, std::optional<Num>> pollard_pair(const Num& a, const Num& b) {
  const Num lower = Num(4) * max_of((a + Num(1)) / (Num(2) * a + Num(3)), (b + Num(1)) / (Num(2) * b + Num(3)));
  std::optional<Num> upper;
  for (const Num& t : {a, b}) {
    const Num den = Num(2) * t + Num(1);
    if (compare(den, Num(0)) == 0) continue;
    const Num term = Num(4) * (t + Num(1)) / den;
    upper = upper ? min_of(*upper, term) : term;
  }
  return {lower, upper};
}

// gamma = max{alpha, beta, -1/2}: M = 2(g+1)/(g+3/2), m = 2(g+1)/(g+1/2).
template <class Num>
std::pair<Num, std::optional<Num>> gamma_pair(const Num& gamma_in) {
  const Num half = Num(1) / Num(2);
  const Num g = max_of(gamma_in, Num(0) - half);
  const Num lower = Num(2) * (g + Num(1)) / (g + Num(1) + half);
  std::optional<Num> upper;
  if (compare(g + half, Num(0)) != 0) upper = Num(2) * (g + Num(1)) / (g + half);
  return {lower, upper};
}

inline region_bounds to_bounds(const std::pair<double, std::optional<double>>& p) {
  return {p.first, p.second.value_or(std::numeric_limits<double>::infinity())};
}

inline void require_pollard(double alpha, double beta) {
  require(alpha >= -0.5 && beta >= -0.5, error_code::domain,
          "pollard_region: requires alpha, beta >= -1/2 (got alpha=" + format_shortest(alpha) +
              ", beta=" + format_shortest(beta) + ")");
}

}  // namespace detail

/// Pollard's region (M, m); only defined for alpha, beta >= -1/2.
inline region_bounds pollard_region(double alpha, double beta) {
  detail::require_pollard(alpha, beta);
  return detail::to_bounds(detail::pollard_pair(alpha, beta));
}

inline exact_region_bounds pollard_region_exact(const rational& alpha, const rational& beta) {
  detail::require(alpha >= rational(-1, 2) && beta >= rational(-1, 2), error_code::domain,
                  "pollard_region: requires alpha, beta >= -1/2");
  const auto [lo, hi] = detail::pollard_pair(alpha, beta);
  return {lo, hi};
}

/// (M, m) as a function of gamma = max{alpha, beta, -1/2} alone.
inline region_bounds gamma_region(double gamma) { return detail::to_bounds(detail::gamma_pair(gamma)); }

inline exact_region_bounds gamma_region_exact(const rational& gamma) {
  const auto [lo, hi] = detail::gamma_pair(gamma);
  return {lo, hi};
}

inline region_bounds new_region(double alpha, double beta) {
  jacobi_params{alpha, beta}.validate();
  return gamma_region(std::max(alpha, beta));
}

inline exact_region_bounds new_region_exact(const rational& alpha, const rational& beta) {
  jacobi_params{alpha.to_double(), beta.to_double()}.validate();
  return gamma_region_exact(std::max(alpha, beta));
}

/// |a + 1/p - (alpha+1)/2| <= min{1/4, (alpha+1)/2} and the same for (b, beta).
inline bool muckenhoupt_condition(double alpha, double beta, double p, double a, double b) {
  jacobi_params{alpha, beta}.validate();
  detail::require(p > 1.0, error_code::invalid_config, "muckenhoupt_condition: p must be > 1");
  auto holds = [p](double s, double t) {
    return std::fabs(s + 1.0 / p - (t + 1.0) / 2.0) <= std::min(0.25, (t + 1.0) / 2.0);
  };
  return holds(a, alpha) && holds(b, beta);
}

inline bool muckenhoupt_condition_exact(const rational& alpha, const rational& beta, const rational& p,
                                        const rational& a, const rational& b) {
  jacobi_params{alpha.to_double(), beta.to_double()}.validate();
  detail::require(p > rational(1), error_code::invalid_config, "muckenhoupt_condition: p must be > 1");
  auto holds = [&p](const rational& s, const rational& t) {
    rational lhs = s + rational(1) / p - (t + rational(1)) / rational(2);
    if (lhs < rational(0)) lhs = -lhs;
    return lhs <= std::min(rational(1, 4), (t + rational(1)) / rational(2));
  };
  return holds(a, alpha) && holds(b, beta);
}

struct region_verdict {
  bool inside = false;
  bool boundary = false;
  double lower = 0.0;  // M
  double upper = 0.0;  // m, possibly +inf
  bool exact = false;  // decided in rational arithmetic
};

namespace detail {

inline void require_verdict_inputs(double alpha, double beta, double p) {
  jacobi_params{alpha, beta}.validate();
  require(std::isfinite(p) && p >= 1.0, error_code::invalid_config,
          "p must be >= 1 (got " + format_shortest(p) + ")");
}

}  // namespace detail

/// Is p strictly inside (M(alpha,beta), m(alpha,beta))? Equality within 1e-12 is boundary.
inline region_verdict convergence_verdict(double alpha, double beta, double p) {
  detail::require_verdict_inputs(alpha, beta, p);
  const auto [lo, hi] = detail::gamma_pair(std::max(alpha, beta));
  region_verdict v;
  v.lower = lo;
  v.upper = hi.value_or(std::numeric_limits<double>::infinity());
  v.boundary = detail::compare(p, lo) == 0 || (hi && detail::compare(p, *hi) == 0);
  v.inside = !v.boundary && p > lo && (!hi || p < *hi);
  return v;
}

inline region_verdict convergence_verdict_exact(const rational& alpha, const rational& beta, const rational& p) {
  detail::require_verdict_inputs(alpha.to_double(), beta.to_double(), p.to_double());
  const auto b = new_region_exact(alpha, beta);
  region_verdict v;
  v.exact = true;
  v.lower = b.lower.to_double();
  v.upper = b.upper ? b.upper->to_double() : std::numeric_limits<double>::infinity();
  v.boundary = p == b.lower || (b.upper && p == *b.upper);
  v.inside = p > b.lower && (!b.upper || p < *b.upper);
  return v;
}

/// Decimal-string inputs are compared exactly when all three parse as short decimals.
inline region_verdict convergence_verdict(std::string_view alpha, std::string_view beta, std::string_view p) {
  const auto a = parse_decimal(alpha);
  const auto b = parse_decimal(beta);
  const auto q = parse_decimal(p);
  if (a && b && q) return convergence_verdict_exact(*a, *b, *q);
  auto number = [](std::string_view s, const char* name) {
    try {
      std::size_t used = 0;
      const double v = std::stod(std::string(s), &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    detail::fail(error_code::invalid_config, std::string(name) + ": not a number '" + std::string(s) + "'");
  };
  return convergence_verdict(number(alpha, "alpha"), number(beta, "beta"), number(p, "p"));
}

// ---------------------------------------------------------------------------
// B_p membership, regular sets, completeness

/// Which endpoints of [-1, 1] belong to the set.
enum class closure {
  closed,      // [-1, 1]
  left_open,   // (-1, 1]
  right_open,  // [-1, 1)
  open,        // (-1, 1)
};

inline std::string_view to_string(closure c) noexcept {
  switch (c) {
    case closure::closed: return "[-1, 1]";
    case closure::left_open: return "(-1, 1]";
    case closure::right_open: return "[-1, 1)";
    case closure::open: return "(-1, 1)";
  }
  return "?";
}

inline interval_set to_interval_set(closure c) {
  const bool left = c == closure::closed || c == closure::right_open;
  const bool right = c == closure::closed || c == closure::left_open;
  return interval_set({{-1.0, 1.0, left, right}});
}

namespace detail {

inline void require_p(double p) {
  require(std::isfinite(p) && p >= 1.0, error_code::invalid_config,
          "p must be >= 1 (got " + format_shortest(p) + ")");
}

/// Regularity of one endpoint at level m: the exponent governing it must lie
/// below mp - 1 (p > 1, strict) or at most m - 1 (p = 1).
inline bool endpoint_regular(double exponent, double p, int m) {
  if (compare(p, 1.0) == 0) return compare(exponent, double(m) - 1.0) <= 0;
  return compare(exponent, double(m) * p - 1.0) < 0;
}

inline closure closure_for(double alpha, double beta, double p, int m) {
  const bool plus_one = endpoint_regular(alpha, p, m);    // x = 1 is governed by alpha
  const bool minus_one = endpoint_regular(beta, p, m);    // x = -1 by beta
  if (plus_one && minus_one) return closure::closed;
  if (plus_one) return closure::left_open;
  if (minus_one) return closure::right_open;
  return closure::open;
}

}  // namespace detail

/// The B_p class of the Jacobi weight: the largest of [-1,1], (-1,1], [-1,1), (-1,1) it belongs to.
inline closure bp_membership(double alpha, double beta, double p) {
  jacobi_params{alpha, beta}.validate();
  detail::require_p(p);
  return detail::closure_for(alpha, beta, p, 1);
}

/// Omega^{(ell-m)}, the (ell-m)-regular points of the vectorial Jacobi weight.
inline interval_set regular_set(double alpha, double beta, double p, int ell, int m) {
  jacobi_params{alpha, beta}.validate();
  detail::require_p(p);
  detail::require(ell >= 1 && m >= 1 && m <= ell, error_code::invalid_config,
                  "regular_set: need 1 <= m <= ell (got m=" + std::to_string(m) + ", ell=" + std::to_string(ell) +
                      ")");
  return to_interval_set(detail::closure_for(alpha, beta, p, m));
}

/// Where omega_{ell-m} may sit for completeness: R minus the non-regular endpoints.
inline interval_set admissible_nodes(double alpha, double beta, double p, int m) {
  jacobi_params{alpha, beta}.validate();
  detail::require_p(p);
  detail::require(m >= 1, error_code::invalid_config, "admissible_nodes: m must be >= 1");
  interval_set s = interval_set::real_line();
  if (!detail::endpoint_regular(beta, p, m)) s = s.without_point(-1.0);
  if (!detail::endpoint_regular(alpha, p, m)) s = s.without_point(1.0);
  return s;
}

struct completeness_result {
  bool complete = true;
  std::vector<int> violating_indices;  // k with omega_k outside its admissible set, ascending
};

/// Completeness of the function space for the given configuration. omega_0 is never constrained.
inline completeness_result completeness_verdict(const sobolev_config& cfg) {
  cfg.validate();
  completeness_result r;
  for (int m = cfg.ell - 1; m >= 1; --m) {
    const int k = cfg.ell - m;
    if (!admissible_nodes(cfg.alpha, cfg.beta, cfg.p, m).contains(cfg.omega[k])) r.violating_indices.push_back(k);
  }
  r.complete = r.violating_indices.empty();
  return r;
}

/// True when every node vector gives a complete space for these (alpha, beta, p, ell).
inline bool complete_for_all_nodes(double alpha, double beta, double p, int ell) {
  jacobi_params{alpha, beta}.validate();
  detail::require_p(p);
  detail::require(ell >= 1, error_code::invalid_config, "ell must be >= 1");
  if (ell == 1) return true;
  return detail::closure_for(alpha, beta, p, 1) == closure::closed;
}

// ---------------------------------------------------------------------------
// Grids

/// lo, lo + step, ..., up to hi inclusive, in exact arithmetic.
struct grid_axis {
  rational lo;
  rational hi;
  rational step;

  std::vector<rational> points() const {
    detail::require(step > rational(0), error_code::invalid_config, "grid step must be > 0");
    detail::require(hi >= lo, error_code::invalid_config, "grid range must satisfy lo <= hi");
    std::vector<rational> out;
    for (rational x = lo; x <= hi; x = x + step) out.push_back(x);
    return out;
  }
};

/// Parses a decimal grid bound; grids are always exact.
inline rational parse_grid_value(std::string_view text, const char* name) {
  const auto r = parse_decimal(text);
  detail::require(r.has_value(), error_code::invalid_config,
                  std::string(name) + ": expected a decimal with at most 12 digits, got '" + std::string(text) + "'");
  return *r;
}

struct delta_point {
  rational gamma;
  rational p;
  bool in_delta = false;   // M(gamma) < p < m(gamma)
  bool in_delta0 = false;  // in_delta and p > gamma + 1
  bool boundary = false;   // p = M(gamma) or p = m(gamma)
};

inline delta_point classify_delta(const rational& gamma, const rational& p) {
  const auto b = gamma_region_exact(gamma);
  delta_point d{gamma, p};
  d.boundary = p == b.lower || (b.upper && p == *b.upper);
  d.in_delta = p > b.lower && (!b.upper || p < *b.upper);
  d.in_delta0 = d.in_delta && p > gamma + rational(1);
  return d;
}

/// Rows in gamma-major order.
inline std::vector<delta_point> delta_grid(const grid_axis& gamma, const grid_axis& p) {
  std::vector<delta_point> out;
  const auto ps = p.points();
  for (const auto& g : gamma.points())
    for (const auto& q : ps) out.push_back(classify_delta(g, q));
  return out;
}

inline void write_delta_csv(std::ostream& out, const std::vector<delta_point>& rows) {
  out << "gamma,p,in_delta,in_delta0\n";
  for (const auto& r : rows)
    out << r.gamma.to_string() << ',' << r.p.to_string() << ',' << int(r.in_delta) << ',' << int(r.in_delta0)
        << '\n';
}

struct verdict_row {
  rational alpha;
  rational beta;
  rational p;
  region_verdict verdict;
};

/// alpha-major, then beta, then p.
inline std::vector<verdict_row> verdict_sweep(const grid_axis& alpha, const grid_axis& beta, const grid_axis& p) {
  std::vector<verdict_row> out;
  const auto bs = beta.points();
  const auto ps = p.points();
  for (const auto& a : alpha.points())
    for (const auto& b : bs)
      for (const auto& q : ps) out.push_back({a, b, q, convergence_verdict_exact(a, b, q)});
  return out;
}

inline void write_verdict_csv(std::ostream& out, const std::vector<verdict_row>& rows) {
  out << "alpha,beta,p,M,m,inside,boundary\n";
  for (const auto& r : rows)
    out << r.alpha.to_string() << ',' << r.beta.to_string() << ',' << r.p.to_string() << ','
        << format_decimal(r.verdict.lower) << ',' << format_decimal(r.verdict.upper) << ',' << int(r.verdict.inside)
        << ',' << int(r.verdict.boundary) << '\n';
}

}  // namespace jsob

#endif  // JSOB_REGIONS_HPP
