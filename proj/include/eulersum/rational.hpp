#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace eulersum {

using BigInt = boost::multiprecision::mpz_int;
/// Always kept in lowest terms with a positive denominator by GMP.
using Rational = boost::multiprecision::mpq_rational;

/// Parses "p", "-p" or "p/q". Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

BigInt factorial(unsigned n);
BigInt binomial(long n, long k);

/// Bernoulli number B_n with the convention B_1 = -1/2. Cached.
const Rational& bernoulli(unsigned n);

/// 2^e for any integer e.
Rational pow2(int e);

}  // namespace eulersum
