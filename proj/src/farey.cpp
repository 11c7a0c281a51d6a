#include "qmf/farey.hpp"

#include "qmf/minkowski.hpp"
#include "qmf/stern_brocot.hpp"

#include <cmath>
#include <stdexcept>

namespace qmf {

Rational farey_map(const Rational& x) {
    if (x < 0 || x > 1) throw std::domain_error("farey_map requires 0 <= x <= 1");
    const BigInt& p = num(x);
    const BigInt& q = den(x);
    if (2 * p <= q) return make_rational(p, q - p);  // x/(1-x)
    return make_rational(q - p, p);                  // (1-x)/x
}

Rational tent_map(const Rational& y) {
    if (y < 0 || y > 1) throw std::domain_error("tent_map requires 0 <= y <= 1");
    const BigInt& p = num(y);
    const BigInt& q = den(y);
    if (2 * p <= q) return make_rational(2 * p, q);
    return make_rational(2 * (q - p), q);
}

Dyadic tent_map(const Dyadic& y) {
    if (y < Dyadic::zero() || y > Dyadic::one()) throw std::domain_error("tent_map requires 0 <= y <= 1");
    const Dyadic two_y = y + y;
    if (two_y <= Dyadic::one()) return two_y;
    return (Dyadic::one() + Dyadic::one()) - two_y;
}

std::pair<Rational, Rational> inverse_branches(const Rational& x) {
    if (x < 0 || x > 1) throw std::domain_error("inverse_branches requires 0 <= x <= 1");
    const BigInt& p = num(x);
    const BigInt& q = den(x);
    return {make_rational(p, p + q), make_rational(q, p + q)};
}

bool conjugacy_check(const Rational& x) {
    return tent_map(q_eval(x)) == q_eval(farey_map(x));
}

std::vector<Rational> orbit(MapKind map, const Rational& x, int steps) {
    if (steps < 0) throw std::domain_error("orbit: steps must be >= 0");
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(steps) + 1);
    out.push_back(x);
    for (int i = 0; i < steps; ++i) {
        const Rational& cur = out.back();
        switch (map) {
            case MapKind::Farey: out.push_back(farey_map(cur)); break;
            case MapKind::Tent: out.push_back(tent_map(cur)); break;
            case MapKind::Gauss: out.push_back(gauss_map(cur)); break;
        }
    }
    return out;
}

namespace {

// Value of [a_{n+1}, a_{n+2}, ...] in [0,1), from up to `extra` digits.
// Exact 0 when a Finite expansion ends at n; otherwise the truncation error
// is below 1/fib(extra)^2, i.e. under double rounding for extra ~ 48.
double tail_value(const CfSpec& x, int n, int extra = 48) {
    if (!x.has_digit(static_cast<std::size_t>(n))) {
        if (x.is_rational()) return 0.0;
        throw DigitsExhausted("birkhoff: tail digits unavailable past n");
    }
    BigInt p_prev = 1, q_prev = 0, p = 0, q = 1;
    for (int j = 0; j < extra && x.has_digit(static_cast<std::size_t>(n + j)); ++j) {
        const BigInt& a = x.digit(static_cast<std::size_t>(n + j));
        BigInt pn = a * p + p_prev;
        BigInt qn = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(pn);
        q = std::move(qn);
    }
    return to_double(make_rational(p, q));
}

constexpr int kLocateLevelCap = 1000000;

}  // namespace

BirkhoffRecord birkhoff(const CfSpec& x, int n) {
    if (n < 1) throw std::domain_error("birkhoff: n must be >= 1");
    BigInt q_prev = 0, q = 1, a_sum = 0;
    for (int k = 1; k <= n; ++k) {
        if (!x.has_digit(static_cast<std::size_t>(k - 1)))
            throw DigitsExhausted("birkhoff: only " + std::to_string(k - 1) + " digits available");
        const BigInt& a = x.digit(static_cast<std::size_t>(k - 1));
        BigInt qn = a * q + q_prev;
        q_prev = std::move(q);
        q = std::move(qn);
        a_sum += a;
    }
    // prod_{k<n} |G^k x| = 1/(q_{n-1} r_n + q_{n-2}) = 1/(q_n + q_{n-1} theta)
    // with theta the value of the tail after digit n.
    const double theta = tail_value(x, n);
    const double ratio = to_double(make_rational(q_prev, q));
    BirkhoffRecord rec;
    rec.n = n;
    rec.s_n_N = a_sum;
    rec.s_n_I = 2.0 * (log_big(q) + std::log1p(theta * ratio));
    if (a_sum <= kLocateLevelCap) {
        rec.ell_at_An = ell_n(x, a_sum.convert_to<int>());
    } else {
        // exact identity: lambda(T_{A_n}(x)) = 1/(q_n (q_n + q_{n-1}))
        rec.ell_at_An = (log_big(q) + log_big(q + q_prev)) / a_sum.convert_to<double>();
    }
    return rec;
}

namespace {

double ell_from_interval(const SbInterval& iv, int n) {
    if (n < 1) throw std::domain_error("ell_n: n must be >= 1");
    return log_big(den(iv.left) * den(iv.right)) / static_cast<double>(n);
}

}  // namespace

double ell_n(const Rational& x, int n) { return ell_from_interval(locate(x, n), n); }
double ell_n(const CfSpec& x, int n) { return ell_from_interval(locate(x, n), n); }

}  // namespace qmf
