#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace fc {

/// Exact rational, always kept in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q" with an explicit denominator, e.g. "1/3", "0/1", "2/1".
std::string to_string(const Rational& q);
/// Accepts "p/q" or a plain integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// v / 2 in lowest terms (mpq_class(p, q) does not reduce on its own).
inline Rational half(long v) {
  Rational q(v, 2);
  q.canonicalize();
  return q;
}

std::vector<std::string> to_strings(const std::vector<Rational>& values);
std::vector<Rational> parse_rationals(const std::vector<std::string>& values);

}  // namespace fc
