#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "omlat/error.hpp"

namespace omlat {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator(const Rational& q) { return boost::multiprecision::denominator(q); }

inline bool is_integral(const Rational& q) { return denominator(q) == 1; }

inline Integer abs(const Integer& v) { return v < 0 ? Integer(-v) : v; }

inline Integer gcd(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Least non-negative residue.
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

/// Exact text form: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  if (is_integral(q)) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline Integer parse_integer(std::string_view s) {
  std::string_view digits = s;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw Error(ErrorKind::Schema, "empty integer literal");
  for (char c : digits)
    if (c < '0' || c > '9') throw Error(ErrorKind::Schema, "bad integer literal '" + std::string(s) + "'");
  Integer v{std::string(digits)};
  return s.front() == '-' ? Integer(-v) : v;
}

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view s) {
  auto slash = s.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorKind::Schema, "zero denominator in '" + std::string(s) + "'");
  return Rational(num, den);
}

}  // namespace omlat
