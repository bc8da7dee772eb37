#pragma once

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "hyparr/error.hpp"

namespace hyparr {

// GMP keeps mpq_class canonical (gcd 1, positive denominator) after every
// arithmetic operation; only raw string construction needs canonicalize().
using Integer = mpz_class;
using Rational = mpq_class;
using RatVector = std::vector<Rational>;

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }

/// Parses "p", "-p", "+p" or "p/q" with q > 0.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] {
    return Error(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
  };
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) ++pos;
  std::size_t digits = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    ++pos;
    ++digits;
  }
  if (digits == 0) throw fail();
  std::string num(text.substr(0, pos));
  if (num.front() == '+') num.erase(0, 1);
  std::string den = "1";
  if (pos < text.size()) {
    if (text[pos] != '/') throw fail();
    ++pos;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || pos != text.size()) throw fail();
    den = std::string(text.substr(start));
  }
  Integer d(den);
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational q(Integer(num), d);
  q.canonicalize();
  return q;
}

/// "p/q", or "p" when q = 1.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline bool is_zero(const RatVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline RatVector scaled(const RatVector& v, const Rational& s) {
  RatVector out(v);
  for (auto& x : out) x *= s;
  return out;
}

inline RatVector negated(const RatVector& v) { return scaled(v, Rational(-1)); }

inline Rational l1_norm(const RatVector& v) {
  Rational s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

/// Smallest positive multiple of `v` with integer entries of gcd 1.
inline std::vector<Integer> primitive_integer(const RatVector& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, x.get_den());
  std::vector<Integer> out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].get_num() * (l / v[i].get_den());
    g = gcd(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

inline std::string to_string(const RatVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace hyparr
