#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace enccdv {

/// Exact rational number. Everything in this project has tiny denominators
/// (divisors of the group order r), but intermediate products are computed
/// in __int128 so normalization never sees an overflowed value.
struct Rational {
  long long num = 0;
  long long den = 1;  // always > 0, gcd(num, den) == 1

  constexpr Rational() = default;
  constexpr Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    num = n;
    den = d;
  }

  bool is_integer() const { return den == 1; }
  bool is_zero() const { return num == 0; }

  long long floor() const {
    long long q = num / den;
    if (num % den != 0 && num < 0) --q;
    return q;
  }
  long long ceil() const {
    long long q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return q;
  }
};

namespace detail {
inline Rational make_reduced(__int128 n, __int128 d) {
  if (d < 0) { n = -n; d = -d; }
  __int128 a = n < 0 ? -n : n;
  __int128 b = d;
  while (b != 0) { __int128 t = a % b; a = b; b = t; }
  if (a > 1) { n /= a; d /= a; }
  Rational r;
  r.num = static_cast<long long>(n);
  r.den = static_cast<long long>(d);
  return r;
}
}  // namespace detail

inline Rational operator+(const Rational& x, const Rational& y) {
  return detail::make_reduced(static_cast<__int128>(x.num) * y.den +
                                  static_cast<__int128>(y.num) * x.den,
                              static_cast<__int128>(x.den) * y.den);
}
inline Rational operator-(const Rational& x, const Rational& y) {
  return detail::make_reduced(static_cast<__int128>(x.num) * y.den -
                                  static_cast<__int128>(y.num) * x.den,
                              static_cast<__int128>(x.den) * y.den);
}
inline Rational operator*(const Rational& x, const Rational& y) {
  return detail::make_reduced(static_cast<__int128>(x.num) * y.num,
                              static_cast<__int128>(x.den) * y.den);
}
inline Rational operator/(const Rational& x, const Rational& y) {
  if (y.num == 0) throw std::domain_error("division by zero rational");
  return detail::make_reduced(static_cast<__int128>(x.num) * y.den,
                              static_cast<__int128>(x.den) * y.num);
}
inline Rational operator-(const Rational& x) { return Rational(-x.num, x.den); }

inline bool operator==(const Rational& x, const Rational& y) {
  return x.num == y.num && x.den == y.den;
}
inline bool operator!=(const Rational& x, const Rational& y) { return !(x == y); }
inline std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
  __int128 lhs = static_cast<__int128>(x.num) * y.den;
  __int128 rhs = static_cast<__int128>(y.num) * x.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

inline Rational& operator+=(Rational& x, const Rational& y) { return x = x + y; }
inline Rational& operator-=(Rational& x, const Rational& y) { return x = x - y; }
inline Rational& operator*=(Rational& x, const Rational& y) { return x = x * y; }

/// Fractional part {x} = x - floor(x), always in [0, 1).
inline Rational frac(const Rational& x) { return x - Rational(x.floor()); }

inline Rational abs(const Rational& x) { return x.num < 0 ? -x : x; }

/// "p/q" for proper fractions, plain "n" for integers.
std::string to_string(const Rational& x);

/// Parses "p/q" or "n"; throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view s);

}  // namespace enccdv
