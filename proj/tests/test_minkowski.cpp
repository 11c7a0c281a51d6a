#include "qmf/minkowski.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace qmf;

TEST_SUITE_BEGIN("minkowski");

TEST_CASE("q_eval on the worked examples") {
    CHECK(q_eval(parse_rational("1/3")) == Dyadic(1, 2));
    CHECK(q_eval(parse_rational("1/2")) == Dyadic(1, 1));
    CHECK(q_eval(parse_rational("2/5")) == Dyadic(3, 3));
    CHECK(q_eval(Rational(0)) == Dyadic::zero());
    CHECK(q_eval(Rational(1)) == Dyadic::one());
    CHECK_THROWS_AS(q_eval(parse_rational("5/4")), std::domain_error);
}

TEST_CASE("recursion path equals the alternating-sum oracle") {
    for (int q = 2; q <= 300; ++q) {
        for (int p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Rational x = make_rational(p, q);
            REQUIRE(q_eval(x) == oracles::q_alternating(x));
        }
    }
}

TEST_CASE("strict monotonicity and the symmetry identity") {
    std::vector<std::pair<Rational, Dyadic>> values;
    for (int q = 1; q <= 300; ++q) {
        for (int p = 0; p <= q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Rational x = make_rational(p, q);
            const Dyadic qx = q_eval(x);
            values.push_back({x, qx});
            REQUIRE(qx + q_eval(1 - x) == Dyadic::one());
        }
    }
    std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < values.size(); ++i) REQUIRE(values[i - 1].second < values[i].second);
}

TEST_CASE("q_recursion_step") {
    SUBCASE("cross-check against q_eval along [2,2]") {
        // Q_0 = 0, Q_1 = Q(1/2), Q_2 = Q(2/5)
        const Dyadic q0 = Dyadic::zero();
        const Dyadic q1 = q_eval(parse_rational("1/2"));
        CHECK(q_recursion_step(q0, q1, 2, 1) == q_eval(parse_rational("2/5")));
    }
    SUBCASE("digit 1 steps by half the gap") {
        const Dyadic q0 = Dyadic::zero();
        const Dyadic q1 = Dyadic(1, 1);
        const Dyadic q2 = q_recursion_step(q0, q1, 1, 1);
        CHECK(q2 == (q1 - q0).half());
    }
    SUBCASE("full recursion over [1,1,1,1]") {
        // digits of 3/5; the recursion lands on Q(3/5) = 5/8
        Dyadic q_prev = Dyadic::zero();
        Dyadic q_cur = Dyadic::one();  // Q(1/a_1) with a_1 = 1
        for (int k = 1; k <= 3; ++k) {
            const Dyadic next = q_recursion_step(q_prev, q_cur, 1, k);
            q_prev = q_cur;
            q_cur = next;
        }
        CHECK(q_cur == Dyadic(5, 3));
        CHECK(q_eval(parse_rational("3/5")) == Dyadic(5, 3));
    }
}

TEST_CASE("enclosures pin Q to width 2^-N") {
    SUBCASE("golden point converges to 2/3") {
        const DyadicEnclosure e = q_enclose(CfSpec::constant(1), 45);
        const Dyadic two_thirds_gap_lo = (Dyadic(2, 0) - (e.lower + e.lower + e.lower)).abs();
        // |2/3 - lower| <= 2^-45 * 3 means |2 - 3*lower| <= 3 * 2^-45 < 2^-43
        CHECK(two_thirds_gap_lo < Dyadic(1, 43));
        CHECK(e.upper - e.lower == Dyadic(1, 45));
    }
    SUBCASE("rational points stay enclosed") {
        const CfSpec x = CfSpec::from_rational(parse_rational("2/5"));
        for (int n = 3; n <= 12; ++n) {
            const DyadicEnclosure e = q_enclose(x, n);
            REQUIRE(e.lower <= Dyadic(3, 3));
            REQUIRE(Dyadic(3, 3) < e.upper);
        }
    }
    SUBCASE("level 1 is the halving") {
        CHECK(q_enclose(CfSpec::from_rational(parse_rational("1/3")), 1).lower == Dyadic::zero());
        CHECK(q_enclose(CfSpec::from_rational(parse_rational("1/3")), 1).upper == Dyadic(1, 1));
    }
}

TEST_CASE("inversion") {
    CHECK(q_inverse(Dyadic(1, 2)) == parse_rational("1/3"));
    CHECK(q_inverse(Dyadic(1, 1)) == parse_rational("1/2"));
    CHECK(q_inverse(Dyadic(3, 3)) == parse_rational("2/5"));
    CHECK(q_inverse(Dyadic::zero()) == Rational(0));
    CHECK(q_inverse(Dyadic::one()) == Rational(1));
    std::mt19937 rng(9);
    for (int i = 0; i < 2000; ++i) {
        const unsigned e = 1 + rng() % 20;
        BigInt m = BigInt(rng()) % ((BigInt(1) << e) - 1) + 1;
        const Dyadic y(m, e);
        REQUIRE(q_eval(q_inverse(y)) == y);
    }
    CHECK_THROWS_AS(Dyadic::parse("1/3"), std::invalid_argument);
}

TEST_CASE("mediant identity") {
    CHECK(mediant_identity_check(sb_root()));
    const SbInterval iv{2, 1, parse_rational("1/3"), parse_rational("1/2")};
    CHECK(mediant_identity_check(iv));
    CHECK(q_eval(parse_rational("2/5")) == (q_eval(parse_rational("1/3")) + q_eval(parse_rational("1/2"))).half());
    for (int n = 0; n <= 6; ++n) {
        const auto seq = sb_sequence(n);
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
            REQUIRE(mediant_identity_check(SbInterval{n, BigInt(k), seq[k], seq[k + 1]}));
        }
    }
}

TEST_CASE("quadratic surd enclosure midpoints approach a rational limit") {
    // Constant(1): midpoints approach 2/3 within 2^-40 at N=45
    const DyadicEnclosure e = q_enclose(CfSpec::constant(1), 45);
    const Dyadic mid = (e.lower + e.upper).half();
    const Rational diff = mid.to_rational() - parse_rational("2/3");
    const Rational bound = make_rational(1, BigInt(1) << 40);
    CHECK(diff < bound);
    CHECK(diff > -bound);
}

TEST_SUITE_END();
