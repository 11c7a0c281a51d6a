#include "qmf/core.hpp"

#include <cmath>
#include <stdexcept>

namespace qmf {

Rational make_rational(BigInt n, BigInt d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    return Rational(std::move(n), std::move(d));
}

Rational mediant(const Rational& x, const Rational& y) {
    return make_rational(num(x) + num(y), den(x) + den(y));
}

double log_big(const BigInt& n) {
    if (n <= 0) throw std::domain_error("log_big of non-positive integer");
    const unsigned bits = boost::multiprecision::msb(n) + 1;
    if (bits <= 63) return std::log(static_cast<double>(n.convert_to<std::uint64_t>()));
    const BigInt top = n >> (bits - 63);
    const double mant = static_cast<double>(top.convert_to<std::uint64_t>());
    return std::log(mant) + static_cast<double>(bits - 63) * std::log(2.0);
}

double to_double(const Rational& r) {
    const BigInt& n = boost::multiprecision::numerator(r);
    const BigInt& d = boost::multiprecision::denominator(r);
    if (n == 0) return 0.0;
    // Scale both parts into double range before dividing.
    const bool neg = n < 0;
    BigInt an = neg ? BigInt(-n) : n;
    const long bn = static_cast<long>(boost::multiprecision::msb(an));
    const long bd = static_cast<long>(boost::multiprecision::msb(d));
    const long shift_n = bn > 62 ? bn - 62 : 0;
    const long shift_d = bd > 62 ? bd - 62 : 0;
    const double dn = static_cast<double>(BigInt(an >> shift_n).convert_to<std::uint64_t>());
    const double dd = static_cast<double>(BigInt(d >> shift_d).convert_to<std::uint64_t>());
    double v = dn / dd * std::exp2(static_cast<double>(shift_n - shift_d));
    return neg ? -v : v;
}

std::string to_string(const Rational& r) {
    if (den(r) == 1) return num(r).str();
    return num(r).str() + "/" + den(r).str();
}

Rational parse_rational(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt n(s.substr(0, slash));
        BigInt d(s.substr(slash + 1));
        return make_rational(std::move(n), std::move(d));
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: '" + s + "'");
    }
}

}  // namespace qmf
