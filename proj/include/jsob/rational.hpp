#ifndef JSOB_RATIONAL_HPP
#define JSOB_RATIONAL_HPP

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "jsob/error.hpp"

namespace jsob {

namespace detail {
__extension__ using int128 = __int128;
}  // namespace detail

/// Exact rational with 64-bit numerator and positive denominator, always in
/// lowest terms. Arithmetic runs in 128 bits and throws error_code::overflow
/// when a reduced result does not fit.
class rational {
 public:
  constexpr rational() = default;
  constexpr rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  rational(std::int64_t n, std::int64_t d) { assign(n, d); }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend rational operator+(const rational& a, const rational& b) {
    return from128(static_cast<detail::int128>(a.num_) * b.den_ + static_cast<detail::int128>(b.num_) * a.den_,
                   static_cast<detail::int128>(a.den_) * b.den_);
  }
  friend rational operator-(const rational& a, const rational& b) {
    return from128(static_cast<detail::int128>(a.num_) * b.den_ - static_cast<detail::int128>(b.num_) * a.den_,
                   static_cast<detail::int128>(a.den_) * b.den_);
  }
  friend rational operator*(const rational& a, const rational& b) {
    return from128(static_cast<detail::int128>(a.num_) * b.num_, static_cast<detail::int128>(a.den_) * b.den_);
  }
  friend rational operator/(const rational& a, const rational& b) {
    detail::require(b.num_ != 0, error_code::domain, "rational: division by zero");
    return from128(static_cast<detail::int128>(a.num_) * b.den_, static_cast<detail::int128>(a.den_) * b.num_);
  }
  friend rational operator-(const rational& a) { return rational(-a.num_, a.den_); }

  friend bool operator==(const rational& a, const rational& b) = default;
  friend std::strong_ordering operator<=>(const rational& a, const rational& b) {
    const detail::int128 lhs = static_cast<detail::int128>(a.num_) * b.den_;
    const detail::int128 rhs = static_cast<detail::int128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }

  /// Exact decimal when the denominator divides a power of ten, else num/den.
  std::string to_string() const {
    std::int64_t d = den_;
    int twos = 0, fives = 0;
    while (d % 2 == 0) d /= 2, ++twos;
    while (d % 5 == 0) d /= 5, ++fives;
    if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
    const int digits = std::max(twos, fives);
    if (digits == 0) return std::to_string(num_);
    detail::int128 scaled = static_cast<detail::int128>(num_);
    std::int64_t factor = 1;
    for (int i = 0; i < digits; ++i) factor *= 10;
    scaled = scaled * (factor / den_);
    const bool negative = scaled < 0;
    if (negative) scaled = -scaled;
    const auto whole = static_cast<std::int64_t>(scaled / factor);
    auto frac = static_cast<std::int64_t>(scaled % factor);
    std::string f = std::to_string(frac);
    f.insert(0, static_cast<std::size_t>(digits) - f.size(), '0');
    while (!f.empty() && f.back() == '0') f.pop_back();
    return (negative ? "-" : "") + std::to_string(whole) + (f.empty() ? "" : "." + f);
  }

 private:
  static rational from128(detail::int128 n, detail::int128 d) {
    detail::require(d != 0, error_code::domain, "rational: zero denominator");
    if (d < 0) n = -n, d = -d;
    detail::int128 a = n < 0 ? -n : n;
    detail::int128 b = d;
    while (b != 0) {
      const detail::int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) n /= a, d /= a;
    constexpr detail::int128 lim = INT64_MAX;
    detail::require(n <= lim && n >= -lim && d <= lim, error_code::overflow, "rational: overflow");
    rational r;
    r.num_ = static_cast<std::int64_t>(n);
    r.den_ = static_cast<std::int64_t>(d);
    return r;
  }

  void assign(std::int64_t n, std::int64_t d) { *this = from128(n, d); }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Parses a plain decimal ("-0.25", "3", "1.05") with at most 12 significant
/// digits. Anything else (exponents, longer mantissas) yields nullopt.
inline std::optional<rational> parse_decimal(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) return std::nullopt;
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::int64_t mantissa = 0;
  std::int64_t scale = 1;
  int significant = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (const char c : s) {
    if (c == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') return std::nullopt;
    seen_digit = true;
    if (mantissa != 0 || c != '0') ++significant;
    if (significant > 12) return std::nullopt;
    mantissa = mantissa * 10 + (c - '0');
    if (seen_point) {
      if (scale > INT64_MAX / 10) return std::nullopt;
      scale *= 10;
    }
  }
  if (!seen_digit) return std::nullopt;
  return rational(negative ? -mantissa : mantissa, scale);
}

}  // namespace jsob

#endif  // JSOB_RATIONAL_HPP
