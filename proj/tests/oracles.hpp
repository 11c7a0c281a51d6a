#pragma once

// Test-side oracles, kept independent of the library paths they check.

#include "qmf/cf.hpp"
#include "qmf/core.hpp"
#include "qmf/dyadic.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace oracles {

// Alternating-sum form of the question mark function,
// Q(x) = -2 sum_k (-1)^k 2^{-(a_1+...+a_k)}, summed digit by digit.
inline qmf::Dyadic q_alternating(const qmf::Rational& x) {
    using namespace qmf;
    if (x == 0) return Dyadic::zero();
    if (x == 1) return Dyadic::one();
    const std::vector<BigInt> digits = cf_expand(x);
    Dyadic acc = Dyadic::zero();
    BigInt a_sum = 0;
    int sign = 1;
    for (const BigInt& a : digits) {
        a_sum += a;
        const Dyadic term(2, a_sum.convert_to<std::uint64_t>());
        acc = sign > 0 ? acc + term : acc - term;
        sign = -sign;
    }
    return acc;
}

// Power iteration for the Stern-Brocot pressure: mass at ratio u = a/(a+b)
// splits under (a,b) -> (a,a+b), (a+b,b) into u/(1+u) with weight (1-u)^t
// and 1/(2-u) with weight u^t; log of the dominant eigenvalue is P(t).
// Discretized on a uniform grid with linear interpolation.
inline double pressure_transfer(double t, int grid = 16384, int iters = 4000) {
    std::vector<double> g(static_cast<std::size_t>(grid), 1.0);
    std::vector<double> ng(g.size());
    const double scale = grid - 1.0;
    double lambda = 0.0;
    for (int it = 0; it < iters; ++it) {
        double num = 0, den = 0, gmax = 0;
        for (int i = 0; i < grid; ++i) {
            const double u = i / scale;
            const double u1 = u / (1.0 + u);
            const double u2 = 1.0 / (2.0 - u);
            auto interp = [&](double v) {
                const double p = v * scale;
                int lo = static_cast<int>(p);
                if (lo >= grid - 1) lo = grid - 2;
                const double f = p - lo;
                return g[static_cast<std::size_t>(lo)] * (1.0 - f) + g[static_cast<std::size_t>(lo) + 1] * f;
            };
            const double v = std::pow(1.0 - u, t) * interp(u1) + std::pow(u, t) * interp(u2);
            ng[static_cast<std::size_t>(i)] = v;
            num += v;
            den += g[static_cast<std::size_t>(i)];
            gmax = std::max(gmax, v);
        }
        const double new_lambda = num / den;
        for (auto& v : ng) v /= gmax;
        std::swap(g, ng);
        if (it > 64 && std::abs(new_lambda - lambda) < 1e-12 * new_lambda) {
            lambda = new_lambda;
            break;
        }
        lambda = new_lambda;
    }
    return std::log(lambda);
}

// Random digit strings for property tests.
inline std::vector<qmf::BigInt> random_digits(std::mt19937& rng, int len, int max_digit = 6) {
    std::uniform_int_distribution<int> dist(1, max_digit);
    std::vector<qmf::BigInt> out;
    out.reserve(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) out.emplace_back(dist(rng));
    return out;
}

}  // namespace oracles
