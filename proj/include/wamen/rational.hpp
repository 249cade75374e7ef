#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace wamen {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", an integer, or a finite decimal ("0.125", "-3.5e-2" is not
/// accepted). Decimals are converted exactly. Throws ParseError.
Rational parse_rational(std::string_view text);

/// Lowest-terms "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);

/// Reads a rational out of a string that must be positive.
Rational parse_positive_rational(std::string_view text);

inline Rational make_rational(long num, unsigned long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Rational upper bound on exp(-n): the reciprocal of a partial sum of the
/// exponential series at n, which is a lower bound on exp(n).
Rational exp_neg_upper_bound(unsigned n);

/// Smallest power-of-two-denominator value P / 2^64 that is >= p where p
/// solves (1 - p)^b = 1 - 1/n. Returns the numerator P in [0, 2^64].
Integer folner_probability_numerator(unsigned n, unsigned boundary_size);

}  // namespace wamen
