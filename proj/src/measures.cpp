#include "qmf/measures.hpp"

#include "qmf/minkowski.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace qmf {

Dyadic nu_F(const Rational& a, const Rational& b) {
    if (a < 0 || b > 1 || a > b) throw std::domain_error("nu_F requires 0 <= a <= b <= 1");
    return q_eval(b) - q_eval(a);
}

double delta_gauss(double x) {
    if (x < 0 || x > 1) throw std::domain_error("delta_gauss requires 0 <= x <= 1");
    return std::log1p(x) / std::log(2.0);
}

double delta_gauss(const Rational& x) { return delta_gauss(to_double(x)); }

namespace {

struct KahanSum {
    double sum = 0;
    double comp = 0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

double level_sum(const std::function<double(double)>& f, int depth, const FoldOptions& opt, QuadratureNode node) {
    const double mass = std::exp2(static_cast<double>(-depth));
    KahanSum total = fold_intervals<KahanSum>(
        depth, opt,
        [&](KahanSum& acc, std::uint64_t sl, std::uint64_t tl, std::uint64_t sr, std::uint64_t tr) {
            double xi;
            if (node == QuadratureNode::Midpoint) {
                xi = 0.5 * (static_cast<double>(sl) / static_cast<double>(tl) +
                            static_cast<double>(sr) / static_cast<double>(tr));
            } else {
                xi = static_cast<double>(sl) / static_cast<double>(tl);
            }
            acc.add(f(xi));
        },
        [](KahanSum& tot, KahanSum&& part) { tot.add(part.sum); });
    return total.sum * mass;
}

}  // namespace

QuadratureResult stieltjes_vs_Q(const std::function<double(double)>& f, int depth, const FoldOptions& opt,
                                QuadratureNode node) {
    if (depth < 1) throw std::domain_error("stieltjes_vs_Q: depth must be >= 1");
    const double value = level_sum(f, depth, opt, node);
    const double prev = level_sum(f, depth - 1, opt, node);
    return QuadratureResult{value, depth, std::abs(value - prev)};
}

QuadratureResult chi_nu_F(int depth, const FoldOptions& opt) {
    const QuadratureResult e = stieltjes_vs_Q([](double x) { return delta_gauss(x); }, depth, opt);
    const double scale = 2.0 * std::log(2.0);
    return QuadratureResult{scale * e.value, depth, scale * e.error_bound};
}

QuadratureResult dim_nu_F(int depth, const FoldOptions& opt) {
    const QuadratureResult chi = chi_nu_F(depth, opt);
    const double h = std::log(2.0);
    const double value = h / chi.value;
    // first-order propagation through 1/chi
    const double err = h / (chi.value * chi.value) * chi.error_bound;
    return QuadratureResult{value, depth, err};
}

namespace {

// Best rational approximation of a double in [0,1] with capped denominator
// and capped digits; keeps q_eval cheap while the approximation error stays
// around 2^-40 or better.
Rational snap_to_rational(double x, std::uint64_t q_cap = std::uint64_t{1} << 26, std::uint64_t digit_cap = 64) {
    if (x <= 0) return Rational(0);
    if (x >= 1) return Rational(1);
    // exact fraction of the double
    int e = 0;
    const double m = std::frexp(x, &e);  // x = m * 2^e, m in [0.5, 1)
    const std::int64_t mant = static_cast<std::int64_t>(std::ldexp(m, 53));
    BigInt p = mant, q = BigInt(1) << static_cast<unsigned>(53 - e);
    // Euclid with caps
    BigInt cp_prev = 1, cq_prev = 0, cp = 0, cq = 1;
    while (p != 0) {
        BigInt a = q / p;
        BigInt r = q % p;
        if (a > digit_cap) break;
        BigInt pn = a * cp + cp_prev;
        BigInt qn = a * cq + cq_prev;
        if (qn > q_cap) break;
        cp_prev = std::move(cp);
        cq_prev = std::move(cq);
        cp = std::move(pn);
        cq = std::move(qn);
        q = p;
        p = std::move(r);
    }
    if (cq == 0) return Rational(0);
    return make_rational(cp, cq);
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr std::array<double, 8> kGlNodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
    0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499,
};
constexpr std::array<double, 8> kGlWeights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541,
};

double gl_panel_integral(int panels) {
    const double ln2 = std::log(2.0);
    KahanSum total;
    for (int j = 0; j < panels; ++j) {
        const double a = static_cast<double>(j) / panels;
        const double b = static_cast<double>(j + 1) / panels;
        const double mid = 0.5 * (a + b);
        const double hw = 0.5 * (b - a);
        for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
            for (const double sgn : {-1.0, 1.0}) {
                const double x = mid + sgn * hw * kGlNodes[i];
                const double qv = q_eval(snap_to_rational(x)).to_double();
                total.add(kGlWeights[i] * hw * qv / ((1.0 + x) * ln2));
            }
        }
    }
    return total.sum;
}

}  // namespace

QuadratureResult expectation_mG_Q(int max_panels, const FoldOptions&) {
    if (max_panels < 4) throw std::domain_error("expectation_mG_Q: need at least 4 panels");
    double prev2 = 0, prev = 0, cur = 0;
    int panels = 0;
    int count = 0;
    for (int m = 8; m <= max_panels; m *= 2) {
        prev2 = prev;
        prev = cur;
        cur = gl_panel_integral(m);
        panels = m;
        ++count;
    }
    // Holder-modulus cover for node snapping: |Q(x)-Q(x^)| <= C |x-x^|^0.7202
    // with |x - x^| <= 2^-40 at the default caps; C = 4 is generous.
    const double snap_bound = 4.0 * std::pow(std::exp2(-40.0), 0.7202);
    double refinement = std::abs(cur - prev);
    if (count >= 3) refinement = std::max(refinement, std::abs(prev - prev2));
    return QuadratureResult{cur, panels, refinement + snap_bound};
}

ExponentRatio quotient_B(const CfSpec& x, int k) {
    if (k < 0) throw std::domain_error("quotient_B: k must be >= 0");
    BigInt q_prev = 0, q = 1, a_sum = 0;
    for (int i = 1; i <= k + 1; ++i) {
        if (!x.has_digit(static_cast<std::size_t>(i - 1)))
            throw DigitsExhausted("quotient_B: digits a_1..a_{k+1} unavailable");
        const BigInt& a = x.digit(static_cast<std::size_t>(i - 1));
        BigInt qn = a * q + q_prev;
        q_prev = std::move(q);
        q = std::move(qn);
        a_sum += a;
    }
    // after the loop: q = q_{k+1}, q_prev = q_k
    ExponentRatio r;
    r.coefficient = 2 * q_prev * q;
    r.pow2_exponent = a_sum;
    r.log_value = log_big(r.coefficient) - a_sum.convert_to<double>() * std::log(2.0);
    return r;
}

ExponentRatio nu_over_lambda(const CfSpec& x, int n) {
    const SbInterval iv = locate(x, n);
    ExponentRatio r;
    r.coefficient = den(iv.left) * den(iv.right);
    r.pow2_exponent = n;
    r.log_value = log_big(r.coefficient) - static_cast<double>(n) * std::log(2.0);
    return r;
}

}  // namespace qmf
