#include "hvf/rational.hpp"

#include "hvf/errors.hpp"

#include <cmath>
#include <string>

namespace hvf {

namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError(std::string(whole), "expected digits");
  Integer v = 0;
  for (char c : digits) {
    if (c < '0' || c > '9') throw ParseError(std::string(whole), "invalid digit");
    v = v * 10 + (c - '0');
  }
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(s.substr(0, slash), text);
    Integer den = parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw ParseError(std::string(text), "zero denominator");
    value = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    Integer num = ip.empty() ? Integer(0) : parse_integer(ip, text);
    Integer den = 1;
    for (char c : fp) {
      if (c < '0' || c > '9') throw ParseError(std::string(text), "invalid digit");
      num = num * 10 + (c - '0');
      den *= 10;
    }
    if (ip.empty() && fp.empty()) throw ParseError(std::string(text), "expected digits");
    value = Rational(num, den);
  } else {
    value = Rational(parse_integer(s, text));
  }
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("non-finite value has no rational form");
  int exp = 0;
  double mant = std::frexp(value, &exp);
  // 53-bit mantissa scaled to an integer
  auto m = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  Rational r{Integer(m)};
  if (exp > 0) {
    r *= Rational(Integer(1) << exp);
  } else if (exp < 0) {
    r /= Rational(Integer(1) << -exp);
  }
  return r;
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational pow(const Rational& r, int e) {
  if (e < 0) {
    if (r == 0) throw InvalidArgument("zero to a negative power");
    return Rational(1) / pow(r, -e);
  }
  Rational result = 1;
  Rational base = r;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

}  // namespace hvf
