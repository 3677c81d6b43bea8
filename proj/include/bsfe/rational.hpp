#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace bsfe {

/// Exact rational number, always canonical (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;
using RationalVector = std::vector<Rational>;
using RationalMatrix = std::vector<RationalVector>;

Rational makeRational(long numerator, long denominator = 1);

/// Parses "p", "-p" or "p/q".
Rational parseRational(std::string_view text);

std::string toString(const Rational& q);

Integer floorOf(const Rational& q);
Integer ceilOf(const Rational& q);

inline bool isInteger(const Rational& q) { return q.get_den() == 1; }

Integer binomial(long n, long k);

}  // namespace bsfe
