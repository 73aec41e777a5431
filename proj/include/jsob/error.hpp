#ifndef JSOB_ERROR_HPP
#define JSOB_ERROR_HPP

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>

namespace jsob {

enum class error_code {
  invalid_config,    // parameter or input violates a documented invariant
  domain,            // evaluation point outside a function's domain
  non_convergence,   // adaptive quadrature or eigen-solver did not converge
  non_finite,        // an integrand produced NaN/inf at a quadrature node
  overflow,          // a log-space constant left the representable range
  degree_cap,        // requested degree exceeds the configured cap
};

inline constexpr std::string_view to_string(error_code code) noexcept {
  switch (code) {
    case error_code::invalid_config: return "invalid_config";
    case error_code::domain: return "domain";
    case error_code::non_convergence: return "non_convergence";
    case error_code::non_finite: return "non_finite";
    case error_code::overflow: return "overflow";
    case error_code::degree_cap: return "degree_cap";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(error_code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  error_code code() const noexcept { return code_; }

 private:
  error_code code_;
};

/// Raised by strict quadrature when the doubling schedule is exhausted.
/// Carries the last estimate so callers can decide whether to accept it.
class non_convergence_error : public error {
 public:
  non_convergence_error(const std::string& what, double estimate, double gap)
      : error(error_code::non_convergence, what), estimate_(estimate), gap_(gap) {}

  double estimate() const noexcept { return estimate_; }
  double gap() const noexcept { return gap_; }

 private:
  double estimate_;
  double gap_;
};

namespace detail {

[[noreturn]] inline void fail(error_code code, const std::string& what) {
  throw error(code, what);
}

inline void require(bool ok, error_code code, const std::string& what) {
  if (!ok) fail(code, what);
}

// Shortest round-trip decimal, for messages.
inline std::string show(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail
}  // namespace jsob

#endif  // JSOB_ERROR_HPP
