#include "qmf/verify.hpp"

#include "qmf/farey.hpp"
#include "qmf/measures.hpp"
#include "qmf/minkowski.hpp"
#include "qmf/pressure.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

namespace qmf {

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    long count = 0;
    bool pass = true;
    std::string detail;

    void expect(bool ok, const std::string& what) {
        ++count;
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

SuiteResult finish(const char* name, Check& c, Clock::time_point t0) {
    SuiteResult r;
    r.name = name;
    r.pass = c.pass;
    r.checks = c.count;
    r.detail = c.pass ? "" : c.detail;
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

SuiteResult suite_conjugacy(const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Check c;
    for (int q = 2; q <= opt.qmax; ++q) {
        for (int p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Rational x = make_rational(p, q);
            Dyadic lhs = tent_map(q_eval(x));
            if (opt.inject_fault && p == 1 && q == 2) lhs = lhs + Dyadic(1, 4);
            c.expect(lhs == q_eval(farey_map(x)), "T(Q(x)) != Q(F(x)) at x=" + to_string(x));
        }
    }
    return finish("conjugacy", c, t0);
}

SuiteResult suite_sb_q_identity(const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Check c;
    for (int n = 0; n <= opt.sb_depth; ++n) {
        const std::vector<Rational> seq = sb_sequence(n, opt.sb_depth);
        for (std::size_t k = 0; k < seq.size(); ++k) {
            c.expect(q_eval(seq[k]) == Dyadic(BigInt(k), static_cast<std::uint64_t>(n)),
                     "Q(s_{n,k}/t_{n,k}) != k 2^-n at n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
            c.expect(nu_F(seq[k], seq[k + 1]) == Dyadic(1, static_cast<std::uint64_t>(n)),
                     "nu_F(T_{n,k}) != 2^-n at n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    return finish("sb_q_identity", c, t0);
}

SuiteResult suite_mediant(const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Check c;
    for (int n = 0; n <= opt.mediant_depth; ++n) {
        const std::vector<Rational> seq = sb_sequence(n, opt.mediant_depth);
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
            SbInterval iv{n, BigInt(k), seq[k], seq[k + 1]};
            c.expect(mediant_identity_check(iv), "mediant identity failed at n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    return finish("mediant", c, t0);
}

SuiteResult suite_determinant(const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Check c;
    std::mt19937 rng(opt.seed);
    std::uniform_int_distribution<int> digit(1, 9);
    std::uniform_int_distribution<int> len(5, 50);
    for (int s = 0; s < opt.det_specs; ++s) {
        std::vector<BigInt> digits;
        const int m = len(rng);
        for (int i = 0; i < m; ++i) digits.push_back(digit(rng));
        const CfSpec spec = CfSpec::explicit_table(std::move(digits));
        const auto conv = convergents(spec, m);
        BigInt p_prev = 0, q_prev = 1;  // p_0, q_0
        for (const auto& cv : conv) {
            const BigInt det = cv.p * q_prev - p_prev * cv.q;
            const BigInt want = (cv.k % 2 == 1) ? 1 : -1;
            c.expect(det == want, "determinant != (-1)^{k-1} at k=" + std::to_string(cv.k));
            p_prev = cv.p;
            q_prev = cv.q;
        }
    }
    return finish("determinant", c, t0);
}

SuiteResult suite_partition(const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Check c;
    for (int n = 0; n <= opt.partition_depth; ++n) {
        const Rational total = fold_pairs<Rational>(
            n, opt.fold,
            [](Rational& acc, std::uint64_t a, std::uint64_t b) { acc += make_rational(1, BigInt(a) * b); },
            [](Rational& tot, Rational&& part) { tot += part; });
        c.expect(total == 1, "sum of lambda(T) != 1 at n=" + std::to_string(n));
    }
    return finish("partition", c, t0);
}

// Every digit string with sum <= opt.eqb_sum, via DFS carrying the
// convergent pair and the Q recursion state.
SuiteResult suite_eqb(const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Check c;
    struct Frame {
        BigInt p_prev, q_prev, p, q;  // (p_{k-1}, q_{k-1}, p_k, q_k)
        Dyadic q_mark_prev, q_mark;   // Q at those convergents
        int a_sum;
        int k;
    };
    const std::function<void(const Frame&)> visit = [&](const Frame& f) {
        if (f.k >= 1) {
            // Eq (B) at convergent index k-1: ratio nu/lambda on
            // [p_{k-1}/q_{k-1}, p_k/q_k)_pm equals 2 q_{k-1} q_k / 2^{A_k}.
            const Rational measured_nu = (f.q_mark - f.q_mark_prev).abs().to_rational();
            const Rational lambda = make_rational(1, f.q_prev * f.q);
            const Rational formula = make_rational(2 * f.q_prev * f.q, BigInt(1) << static_cast<unsigned>(f.a_sum));
            c.expect(measured_nu / lambda == formula, "Eq(B) mismatch at prefix sum " + std::to_string(f.a_sum));
        }
        for (int a = 1; f.a_sum + a <= opt.eqb_sum; ++a) {
            Frame g;
            g.p_prev = f.p;
            g.q_prev = f.q;
            g.p = a * f.p + f.p_prev;
            g.q = a * f.q + f.q_prev;
            g.a_sum = f.a_sum + a;
            g.k = f.k + 1;
            g.q_mark_prev = f.q_mark;
            if (f.k == 0) {
                g.q_mark = a == 1 ? Dyadic::one() : Dyadic(1, static_cast<std::uint64_t>(a - 1));
            } else {
                g.q_mark = q_recursion_step(f.q_mark_prev, f.q_mark, a, f.k);
            }
            visit(g);
        }
    };
    Frame root;
    root.p_prev = 1;
    root.q_prev = 0;
    root.p = 0;
    root.q = 1;
    root.q_mark_prev = Dyadic::zero();  // unused at k=0
    root.q_mark = Dyadic::zero();       // Q_0 = Q(0/1)
    root.a_sum = 0;
    root.k = 0;
    visit(root);
    return finish("eqB", c, t0);
}

SuiteResult suite_inversion(const VerifyOptions& opt) {
    const auto t0 = Clock::now();
    Check c;
    for (unsigned e = 1; e <= 10; ++e) {
        for (BigInt m = 1; m < (BigInt(1) << e); m += 2) {
            const Dyadic y(m, e);
            c.expect(q_eval(q_inverse(y)) == y, "inversion round trip failed at " + y.str());
        }
    }
    std::mt19937 rng(opt.seed + 1);
    for (int i = 0; i < 500; ++i) {
        const unsigned e = 11 + rng() % 10;  // up to 2^-20
        BigInt m = BigInt(rng()) % ((BigInt(1) << e) - 1) + 1;
        if (m % 2 == 0) ++m;
        const Dyadic y(m, e);
        c.expect(q_eval(q_inverse(y)) == y, "inversion round trip failed at " + y.str());
    }
    return finish("inversion", c, t0);
}

SuiteResult suite_constants(const VerifyOptions&) {
    const auto t0 = Clock::now();
    Check c;
    const SpectralConstants sc = constants();
    c.expect(std::abs(sc.two_log_gamma - 0.9624) < 1e-4, "2 log gamma outside 0.9624 +- 1e-4");
    c.expect(std::abs(sc.holder_exponent - 0.7202) < 1e-4, "Holder exponent outside 0.7202 +- 1e-4");
    c.expect(std::abs(sc.rho - 5.3197) < 1e-4, "rho outside 5.3197 +- 1e-4");
    c.expect(std::abs(sc.avg_digit_upper - 1.3884) < 1e-4, "base-2 digit threshold outside 1.3884 +- 1e-4");
    const double lhs = std::pow(1.0 + sc.rho, 1.0 / sc.rho);
    c.expect(std::abs(lhs - std::sqrt(2.0)) < 1e-9, "(1+rho)^(1/rho) != sqrt 2");
    return finish("constants", c, t0);
}

}  // namespace

std::vector<SuiteResult> run_verify(const VerifyOptions& opt) {
    const std::vector<std::pair<std::string, SuiteResult (*)(const VerifyOptions&)>> suites = {
        {"conjugacy", suite_conjugacy}, {"sb_q_identity", suite_sb_q_identity},
        {"mediant", suite_mediant},     {"determinant", suite_determinant},
        {"partition", suite_partition}, {"eqB", suite_eqb},
        {"inversion", suite_inversion}, {"constants", suite_constants},
    };
    std::vector<SuiteResult> out;
    for (const auto& [name, fn] : suites) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), name) == opt.only.end()) continue;
        out.push_back(fn(opt));
    }
    if (out.empty()) throw std::invalid_argument("verify: no suite matches the filter");
    return out;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    return std::all_of(results.begin(), results.end(), [](const SuiteResult& r) { return r.pass; });
}

}  // namespace qmf
