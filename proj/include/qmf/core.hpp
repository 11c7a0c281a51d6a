#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace qmf {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational, always reduced, denominator positive.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rational& r) { return boost::multiprecision::denominator(r); }

Rational make_rational(BigInt n, BigInt d);

// (a+c)/(b+d) for a/b and c/d. For Stern-Brocot neighbours the result is
// already reduced; make_rational re-reduces anyway.
Rational mediant(const Rational& x, const Rational& y);

// Natural log of a positive big integer. The value is assembled from the
// top 64 bits plus the bit length, so the float error is a single rounding
// rather than something accumulated over limbs.
double log_big(const BigInt& n);

double to_double(const Rational& r);

std::string to_string(const Rational& r);

// Accepts "p/q" or "p"; throws std::invalid_argument on anything else.
Rational parse_rational(const std::string& s);

}  // namespace qmf
