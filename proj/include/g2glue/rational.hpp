#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace g2glue {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer den(const Rational& q) { return boost::multiprecision::denominator(q); }

// Canonical "p/q" rendering; integers print without the "/1".
inline std::string to_string(const Rational& q) {
  std::ostringstream os;
  os << num(q);
  if (den(q) != 1) os << '/' << den(q);
  return os.str();
}

// Parses "p", "-p/q", " 3 / 4 ".  Throws on malformed input.
inline Rational parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(t));
    Integer p(t.substr(0, slash));
    Integer q(t.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(p, q);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad rational literal: " + s);
  }
}

// Fractional part in [0, 1).
inline Rational frac_mod1(const Rational& q) {
  Integer n = num(q), d = den(q);
  Integer f = n % d;
  if (f < 0) f += d;
  return Rational(f, d);
}

inline bool is_integer(const Rational& q) { return den(q) == 1; }

// floor(q) as an integer
inline Integer rfloor(const Rational& q) {
  Integer n = num(q), d = den(q);
  Integer f = n / d;
  if (n % d != 0 && n < 0) f -= 1;
  return f;
}

// Exact integral n-th root, if it exists.
inline std::optional<Integer> integer_nth_root(const Integer& a, unsigned n) {
  if (a < 0) {
    if (n % 2 == 0) return std::nullopt;
    auto r = integer_nth_root(-a, n);
    if (!r) return std::nullopt;
    return -*r;
  }
  if (a == 0) return Integer(0);
  Integer lo = 0, hi = a + 1;
  while (lo + 1 < hi) {
    Integer mid = (lo + hi) / 2;
    Integer p = 1;
    bool over = false;
    for (unsigned i = 0; i < n; ++i) {
      p *= mid;
      if (p > a) { over = true; break; }
    }
    if (over) hi = mid; else lo = mid;
  }
  Integer p = 1;
  for (unsigned i = 0; i < n; ++i) p *= lo;
  if (p == a) return lo;
  return std::nullopt;
}

// Exact rational n-th root, if it exists.
inline std::optional<Rational> rational_nth_root(const Rational& q, unsigned n) {
  auto pn = integer_nth_root(num(q), n);
  auto pd = integer_nth_root(den(q), n);
  if (!pn || !pd) return std::nullopt;
  return Rational(*pn, *pd);
}

}  // namespace g2glue
