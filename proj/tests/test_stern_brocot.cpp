#include "qmf/stern_brocot.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <numeric>
#include <random>

using namespace qmf;

TEST_SUITE_BEGIN("stern_brocot");

TEST_CASE("sequence recursion base cases") {
    CHECK(sb_sequence(0) == std::vector<Rational>{Rational(0), Rational(1)});
    CHECK(sb_sequence(1) == std::vector<Rational>{Rational(0), parse_rational("1/2"), Rational(1)});
    CHECK(sb_sequence(2) == std::vector<Rational>{Rational(0), parse_rational("1/3"), parse_rational("1/2"),
                                                  parse_rational("2/3"), Rational(1)});
    CHECK_THROWS_AS(sb_sequence(21), std::domain_error);
    CHECK_THROWS_AS(sb_sequence(8, 6), std::domain_error);
}

TEST_CASE("children split at the mediant and stay unimodular") {
    const auto [l, r] = sb_children(sb_root());
    CHECK(l.left == Rational(0));
    CHECK(l.right == parse_rational("1/2"));
    CHECK(r.left == parse_rational("1/2"));
    CHECK(r.right == Rational(1));
    CHECK(l.index == 0);
    CHECK(r.index == 1);

    const SbInterval iv{2, 1, parse_rational("1/3"), parse_rational("1/2")};
    const auto [a, b] = sb_children(iv);
    CHECK(a.right == parse_rational("2/5"));
    CHECK(b.left == parse_rational("2/5"));
    // determinant 1 for both children
    for (const SbInterval& c : {a, b}) {
        CHECK(num(c.right) * den(c.left) - num(c.left) * den(c.right) == 1);
    }
}

TEST_CASE("unimodularity across whole levels") {
    for (int n = 0; n <= 12; ++n) {
        const auto seq = sb_sequence(n, 12);
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
            REQUIRE(num(seq[k + 1]) * den(seq[k]) - num(seq[k]) * den(seq[k + 1]) == 1);
        }
    }
}

TEST_CASE("locate finds the half-open interval") {
    const SbInterval iv = locate(parse_rational("2/5"), 2);
    CHECK(iv.left == parse_rational("1/3"));
    CHECK(iv.right == parse_rational("1/2"));

    for (int n = 1; n <= 8; ++n) {
        const SbInterval spine = locate(Rational(0), n);
        CHECK(spine.left == Rational(0));
        CHECK(spine.right == make_rational(1, n + 1));
        CHECK(spine.index == 0);
    }

    const SbInterval g = locate(CfSpec::constant(1), 3);
    CHECK(g.left == parse_rational("3/5"));
    CHECK(g.right == parse_rational("2/3"));

    CHECK_THROWS_AS(locate(Rational(1), 3), std::domain_error);
}

TEST_CASE("locate agrees with the materialized sequence") {
    std::map<Rational, std::size_t> position;
    const int n = 10;
    const auto seq = sb_sequence(n, 10);
    for (std::size_t k = 0; k < seq.size(); ++k) position[seq[k]] = k;
    for (int q = 1; q <= 200; ++q) {
        for (int p = 0; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const SbInterval iv = locate(make_rational(p, q), n);
            const auto it = position.find(iv.left);
            REQUIRE(it != position.end());
            REQUIRE(it->second + 1 < seq.size());
            REQUIRE(seq[it->second + 1] == iv.right);
            REQUIRE(BigInt(it->second) == iv.index);
        }
    }
}

TEST_CASE("locate needs enough digits from explicit specs") {
    const CfSpec shallow = CfSpec::explicit_table({BigInt(1), BigInt(1)});
    CHECK_THROWS_AS(locate(shallow, 12), DigitsExhausted);
}

TEST_CASE("fold visits every level-n pair once, in order") {
    struct CountAcc {
        long n = 0;
    };
    const auto count = fold_pairs<CountAcc>(
        2, {}, [](CountAcc& a, std::uint64_t, std::uint64_t) { ++a.n; },
        [](CountAcc& tot, CountAcc&& p) { tot.n += p.n; });
    CHECK(count.n == 4);

    const Rational total = fold_pairs<Rational>(
        2, {}, [](Rational& acc, std::uint64_t a, std::uint64_t b) { acc += make_rational(1, BigInt(a) * b); },
        [](Rational& tot, Rational&& p) { tot += p; });
    CHECK(total == 1);  // 1/3 + 1/6 + 1/6 + 1/3

    // enumeration oracle: level-3 pairs left to right, max element 5
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    fold_pairs<int>(
        3, {},
        [&](int&, std::uint64_t a, std::uint64_t b) { pairs.push_back({a, b}); },
        [](int&, int&&) {});
    const std::vector<std::pair<std::uint64_t, std::uint64_t>> expect = {
        {1, 4}, {4, 3}, {3, 5}, {5, 2}, {2, 5}, {5, 3}, {3, 4}, {4, 1}};
    CHECK(pairs == expect);
    std::uint64_t max_den = 0;
    for (const auto& [a, b] : pairs) max_den = std::max({max_den, a, b});
    CHECK(max_den == 5);
}

TEST_CASE("partition of unity is exact through level 20") {
    FoldOptions opt;
    opt.workers = 2;
    for (int n : {5, 12, 20}) {
        const Rational total = fold_pairs<Rational>(
            n, opt, [](Rational& acc, std::uint64_t a, std::uint64_t b) { acc += make_rational(1, BigInt(a) * b); },
            [](Rational& tot, Rational&& p) { tot += p; });
        REQUIRE(total == 1);
    }
    CHECK_THROWS_AS((fold_pairs<int>(40, {}, [](int&, std::uint64_t, std::uint64_t) {}, [](int&, int&&) {})),
                    std::domain_error);
}

TEST_CASE("interval fold matches the pair fold") {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> from_pairs;
    fold_pairs<int>(
        6, {}, [&](int&, std::uint64_t a, std::uint64_t b) { from_pairs.push_back({a, b}); }, [](int&, int&&) {});
    std::vector<std::array<std::uint64_t, 4>> from_intervals;
    fold_intervals<int>(
        6, {},
        [&](int&, std::uint64_t sl, std::uint64_t tl, std::uint64_t sr, std::uint64_t tr) {
            from_intervals.push_back({sl, tl, sr, tr});
        },
        [](int&, int&&) {});
    REQUIRE(from_pairs.size() == from_intervals.size());
    for (std::size_t i = 0; i < from_pairs.size(); ++i) {
        REQUIRE(from_intervals[i][1] == from_pairs[i].first);
        REQUIRE(from_intervals[i][3] == from_pairs[i].second);
        // unimodularity of the endpoints
        REQUIRE(from_intervals[i][2] * from_intervals[i][1] - from_intervals[i][0] * from_intervals[i][3] == 1);
    }
}

TEST_CASE("convergent linkage: lambda(T_{A_n}(x)) = 1/(q_n (q_n + q_{n-1}))") {
    // brute force over every digit string with sum <= 16
    std::vector<BigInt> digits;
    const std::function<void(int, BigInt, BigInt)> visit = [&](int sum, BigInt q_prev, BigInt q) {
        if (!digits.empty()) {
            std::vector<BigInt> padded = digits;
            CfTail tail{TailKind::Constant, {BigInt(2)}};
            const CfSpec x(padded, tail);
            const SbInterval iv = locate(x, sum);
            const Rational width = iv.right - iv.left;
            REQUIRE(width == make_rational(1, q * (q + q_prev)));
        }
        for (int a = 1; sum + a <= 16; ++a) {
            digits.emplace_back(a);
            visit(sum + a, q, a * q + q_prev);
            digits.pop_back();
        }
    };
    visit(0, BigInt(0), BigInt(1));
}

TEST_CASE("type change flags descent direction flips") {
    // digits all 1: the path alternates, so every level flips
    for (int n = 1; n <= 10; ++n) CHECK(type_change(CfSpec::constant(1), n));

    // a_1 = 5 keeps four left steps in a row
    const CfSpec five({BigInt(5)}, CfTail{TailKind::Constant, {BigInt(2)}});
    for (int n = 1; n <= 3; ++n) CHECK_FALSE(type_change(five, n));
    CHECK(type_change(five, 4));

    // brute force against the descent path: flips happen exactly at
    // n = (a_1 + ... + a_k) - 1
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto digits = oracles::random_digits(rng, 8, 4);
        const CfSpec x(digits, CfTail{TailKind::Constant, {BigInt(2)}});
        std::vector<int> boundaries;
        int acc = 0;
        for (const auto& a : digits) {
            acc += a.convert_to<int>();
            boundaries.push_back(acc - 1);
        }
        for (int n = 1; n <= acc - 1; ++n) {
            const bool expect = std::find(boundaries.begin(), boundaries.end(), n) != boundaries.end();
            REQUIRE(type_change(x, n) == expect);
        }
    }
}

TEST_SUITE_END();
