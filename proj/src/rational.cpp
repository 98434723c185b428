#include "enccdv/rational.hpp"

#include <charconv>

namespace enccdv {

std::string to_string(const Rational& x) {
  if (x.den == 1) return std::to_string(x.num);
  return std::to_string(x.num) + "/" + std::to_string(x.den);
}

Rational parse_rational(std::string_view s) {
  auto parse_ll = [](std::string_view t) -> long long {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size())
      throw std::invalid_argument("malformed rational literal");
    return value;
  };
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_ll(s));
  long long num = parse_ll(s.substr(0, slash));
  long long den = parse_ll(s.substr(slash + 1));
  if (den <= 0) throw std::invalid_argument("rational denominator must be positive");
  return Rational(num, den);
}

}  // namespace enccdv
