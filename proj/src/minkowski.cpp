#include "qmf/minkowski.hpp"

#include <stdexcept>

namespace qmf {

Dyadic q_recursion_step(const Dyadic& q_km1, const Dyadic& q_k, const BigInt& a_k1, int k) {
    if (a_k1 < 1) throw std::domain_error("q_recursion_step: digit must be >= 1");
    const std::uint64_t a = a_k1.convert_to<std::uint64_t>();
    // (1 - 2^-a) |Q_k - Q_{k-1}|
    const Dyadic gap = (q_k - q_km1).abs();
    const Dyadic scale((BigInt(1) << a) - 1, a);
    const Dyadic step = gap * scale;
    return (k % 2 != 0) ? q_km1 + step : q_km1 - step;
}

Dyadic q_eval(const Rational& x) {
    if (x < 0 || x > 1) throw std::domain_error("q_eval requires 0 <= x <= 1");
    if (x == 0) return Dyadic::zero();
    if (x == 1) return Dyadic::one();
    const std::vector<BigInt> digits = cf_expand(x);
    // Q_0 = Q(0/1) = 0; Q_1 = Q(1/a_1) = 2 * 2^-a_1 (equals 1 when a_1 = 1).
    Dyadic q_prev = Dyadic::zero();
    const std::uint64_t a1 = digits[0].convert_to<std::uint64_t>();
    Dyadic q_cur = a1 == 1 ? Dyadic::one() : Dyadic(1, a1 - 1);
    for (std::size_t k = 1; k < digits.size(); ++k) {
        Dyadic next = q_recursion_step(q_prev, q_cur, digits[k], static_cast<int>(k));
        q_prev = std::move(q_cur);
        q_cur = std::move(next);
    }
    return q_cur;
}

DyadicEnclosure q_enclose(const CfSpec& x, int N) {
    if (N < 0) throw std::domain_error("q_enclose: N must be >= 0");
    const SbInterval iv = locate(x, N);
    // Q maps T_{N,k} onto [k 2^-N, (k+1) 2^-N).
    return DyadicEnclosure{Dyadic(iv.index, static_cast<std::uint64_t>(N)),
                           Dyadic(iv.index + 1, static_cast<std::uint64_t>(N)), N};
}

Rational q_inverse(const Dyadic& y) {
    if (y < Dyadic::zero() || y > Dyadic::one()) throw std::domain_error("q_inverse requires 0 <= y <= 1");
    if (y.is_zero()) return Rational(0);
    if (y == Dyadic::one()) return Rational(1);
    // y = m / 2^e with m odd; descend e levels by the bits of m (most
    // significant first) and take the left endpoint, Q(s_{e,m}/t_{e,m}) = m 2^-e.
    const BigInt& m = y.mantissa();
    const std::uint64_t e = y.exponent();
    BigInt lp = 0, lq = 1, rp = 1, rq = 1;
    for (std::uint64_t i = e; i-- > 0;) {
        BigInt mp = lp + rp;
        BigInt mq = lq + rq;
        if (boost::multiprecision::bit_test(m, static_cast<unsigned>(i))) {
            lp = std::move(mp);
            lq = std::move(mq);
        } else {
            rp = std::move(mp);
            rq = std::move(mq);
        }
    }
    return make_rational(std::move(lp), std::move(lq));
}

bool mediant_identity_check(const SbInterval& iv) {
    const Dyadic q_mid = q_eval(mediant(iv.left, iv.right));
    const Dyadic avg = (q_eval(iv.left) + q_eval(iv.right)).half();
    return q_mid == avg;
}

}  // namespace qmf
