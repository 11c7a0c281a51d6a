#pragma once

#include "qmf/core.hpp"

#include <compare>
#include <cstdint>
#include <string>

namespace qmf {

// Exact dyadic rational m / 2^e. Canonical form keeps the mantissa odd
// (or zero with e = 0), so equality is plain field comparison.
class Dyadic {
  public:
    Dyadic() : mant_(0), exp_(0) {}
    Dyadic(BigInt mantissa, std::uint64_t exponent);

    static Dyadic zero() { return Dyadic(); }
    static Dyadic one() { return Dyadic(1, 0); }

    const BigInt& mantissa() const { return mant_; }
    std::uint64_t exponent() const { return exp_; }
    bool is_zero() const { return mant_ == 0; }

    Dyadic operator+(const Dyadic& o) const;
    Dyadic operator-(const Dyadic& o) const;
    Dyadic operator*(const Dyadic& o) const;
    Dyadic abs() const;
    // Exact halving: m / 2^(e+1).
    Dyadic half() const { return Dyadic(mant_, exp_ + 1); }

    std::strong_ordering operator<=>(const Dyadic& o) const;
    bool operator==(const Dyadic& o) const = default;

    Rational to_rational() const;
    double to_double() const;

    // "m/2^e"; integers print without the power part.
    std::string str() const;
    // Plain reduced fraction with the denominator expanded in decimal.
    std::string str_fraction() const;

    // Accepts "m/2^e", "p/q" with q a power of two, or an integer.
    // Throws std::invalid_argument for non-dyadic input.
    static Dyadic parse(const std::string& s);

  private:
    void normalize();
    BigInt mant_;
    std::uint64_t exp_;
};

}  // namespace qmf
