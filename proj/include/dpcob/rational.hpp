#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dpcob {

using Rational = mpq_class;
using Integer = mpz_class;

/// Canonical "a/b" rendering (b > 0, reduced); integers print without a denominator.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.front() == '+') s.erase(0, 1);
  Rational r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

/// num/den in canonical form.
inline Rational frac(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r{Integer(num), Integer(den)};
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace dpcob
