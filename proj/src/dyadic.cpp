#include "qmf/dyadic.hpp"

#include <cmath>
#include <stdexcept>

namespace qmf {

Dyadic::Dyadic(BigInt mantissa, std::uint64_t exponent) : mant_(std::move(mantissa)), exp_(exponent) {
    normalize();
}

void Dyadic::normalize() {
    if (mant_ == 0) {
        exp_ = 0;
        return;
    }
    const unsigned tz = boost::multiprecision::lsb(mant_ < 0 ? BigInt(-mant_) : mant_);
    const std::uint64_t shift = std::min<std::uint64_t>(tz, exp_);
    if (shift > 0) {
        mant_ >>= shift;
        exp_ -= shift;
    }
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
    const std::uint64_t e = std::max(exp_, o.exp_);
    BigInt a = mant_ << (e - exp_);
    BigInt b = o.mant_ << (e - o.exp_);
    return Dyadic(a + b, e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const {
    const std::uint64_t e = std::max(exp_, o.exp_);
    BigInt a = mant_ << (e - exp_);
    BigInt b = o.mant_ << (e - o.exp_);
    return Dyadic(a - b, e);
}

Dyadic Dyadic::operator*(const Dyadic& o) const {
    return Dyadic(mant_ * o.mant_, exp_ + o.exp_);
}

Dyadic Dyadic::abs() const {
    return mant_ < 0 ? Dyadic(-mant_, exp_) : *this;
}

std::strong_ordering Dyadic::operator<=>(const Dyadic& o) const {
    const std::uint64_t e = std::max(exp_, o.exp_);
    BigInt a = mant_ << (e - exp_);
    BigInt b = o.mant_ << (e - o.exp_);
    if (a < b) return std::strong_ordering::less;
    if (a > b) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Rational Dyadic::to_rational() const {
    return make_rational(mant_, BigInt(1) << exp_);
}

double Dyadic::to_double() const {
    if (mant_ == 0) return 0.0;
    const bool neg = mant_ < 0;
    BigInt a = neg ? BigInt(-mant_) : mant_;
    const long bits = static_cast<long>(boost::multiprecision::msb(a)) + 1;
    const long drop = bits > 62 ? bits - 62 : 0;
    const double m = static_cast<double>(BigInt(a >> drop).convert_to<std::uint64_t>());
    const double v = m * std::exp2(static_cast<double>(drop) - static_cast<double>(exp_));
    return neg ? -v : v;
}

std::string Dyadic::str() const {
    if (exp_ == 0) return mant_.str();
    return mant_.str() + "/2^" + std::to_string(exp_);
}

std::string Dyadic::str_fraction() const {
    if (exp_ == 0) return mant_.str();
    return mant_.str() + "/" + (BigInt(1) << exp_).str();
}

Dyadic Dyadic::parse(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Dyadic(BigInt(s), 0);
        BigInt m(s.substr(0, slash));
        const std::string d = s.substr(slash + 1);
        if (d.rfind("2^", 0) == 0) return Dyadic(std::move(m), std::stoull(d.substr(2)));
        BigInt q(d);
        if (q <= 0) throw std::invalid_argument("denominator must be positive");
        if (boost::multiprecision::lsb(q) != boost::multiprecision::msb(q))
            throw std::invalid_argument("not a dyadic rational (denominator is not a power of two): '" + s + "'");
        return Dyadic(std::move(m), boost::multiprecision::lsb(q));
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("not a dyadic rational: '" + s + "'");
    }
}

}  // namespace qmf
