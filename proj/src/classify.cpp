#include "qmf/classify.hpp"

#include "qmf/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qmf {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Lambda0: return "Lambda0";
        case Verdict::LambdaInf: return "LambdaInf";
        case Verdict::LambdaTilde: return "LambdaTilde";
        case Verdict::Undetermined: return "Undetermined";
    }
    return "?";
}

DiagnosticSeries diagnostics(const CfSpec& x, int horizon) {
    if (horizon < 8) throw std::domain_error("diagnostics: horizon must be >= 8");
    if (x.is_rational())
        throw std::domain_error("diagnostics: rational point (finite CF) is a degenerate input");
    DiagnosticSeries d;
    d.horizon = horizon;
    d.r.reserve(static_cast<std::size_t>(horizon));
    d.quotient_log.reserve(static_cast<std::size_t>(horizon));
    d.ell_at_A.reserve(static_cast<std::size_t>(horizon));
    d.avg_digit.reserve(static_cast<std::size_t>(horizon));

    const double ln2 = std::log(2.0);
    BigInt q_prev = 0, q = 1, a_sum = 0;
    for (int k = 1; k <= horizon; ++k) {
        if (!x.has_digit(static_cast<std::size_t>(k - 1)))
            throw DigitsExhausted("diagnostics: only " + std::to_string(k - 1) + " digits available");
        const BigInt& a = x.digit(static_cast<std::size_t>(k - 1));
        BigInt qn = a * q + q_prev;
        q_prev = std::move(q);
        q = std::move(qn);
        a_sum += a;
        const double log_q = log_big(q);
        const double log_q_prev = q_prev > 0 ? log_big(q_prev) : 0.0;
        const double a_sum_d = a_sum.convert_to<double>();
        d.r.push_back(log_q > 0 ? a_sum_d / (2.0 * log_q) : std::numeric_limits<double>::infinity());
        // Eq-(B) quotient at convergent index k-1: 2 q_{k-1} q_k / 2^{A_k}
        d.quotient_log.push_back(ln2 + log_q_prev + log_q - a_sum_d * ln2);
        d.ell_at_A.push_back((log_q + log_big(q + q_prev)) / a_sum_d);
        d.avg_digit.push_back(a_sum_d / static_cast<double>(k));
    }
    d.window_begin = horizon - horizon / 4;
    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    double mean = 0;
    int cnt = 0;
    for (int k = d.window_begin; k < horizon; ++k) {
        const double v = d.r[static_cast<std::size_t>(k)];
        mn = std::min(mn, v);
        mx = std::max(mx, v);
        mean += v;
        ++cnt;
    }
    d.r_window_min = mn;
    d.r_window_max = mx;
    d.r_window_mean = mean / cnt;
    return d;
}

namespace {

// Least-squares slope of y over [begin, end), per index.
double window_slope(const std::vector<double>& y, int begin) {
    const int n = static_cast<int>(y.size()) - begin;
    if (n < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double xv = i;
        const double yv = y[static_cast<std::size_t>(begin + i)];
        sx += xv;
        sy += yv;
        sxx += xv * xv;
        sxy += xv * yv;
    }
    const double den = n * sxx - sx * sx;
    return den == 0 ? 0.0 : (n * sxy - sx * sy) / den;
}

}  // namespace

ClassificationReport classify(const CfSpec& x, int horizon, double delta) {
    ClassificationReport rep;
    rep.input = x.str();
    rep.horizon = horizon;
    rep.delta = delta;
    rep.diag = diagnostics(x, horizon);
    const DiagnosticSeries& d = rep.diag;

    const double thr = 1.0 / std::log(2.0);  // 1/h_top

    if (d.r_window_max < thr - delta) {
        rep.verdict = Verdict::LambdaInf;
        rep.rule = "Cor6.2(i): lim (sum a_i)/(2 log q_n) < 1/h_top";
        rep.margin = thr - d.r_window_max;
    } else if (d.r_window_min > thr + delta) {
        rep.verdict = Verdict::Lambda0;
        rep.rule = "Cor6.2(ii): lim (sum a_i)/(2 log q_n) > 1/h_top";
        rep.margin = d.r_window_min - thr;
    } else if (d.r_window_max > thr + delta && d.r_window_min < thr - delta) {
        rep.verdict = Verdict::LambdaTilde;
        rep.rule = "Cor6.2(iii): tail window straddles 1/h_top";
        rep.margin = std::min(d.r_window_max - thr, thr - d.r_window_min);
    } else {
        // Prop 5.4(ii) route: a_{k+1} * (nu/lambda quotient) -> 0, read off
        // the log-product trend. The digit factor reuses a_{k+1}, which the
        // series has already consumed.
        std::vector<double> logprod(d.quotient_log.size());
        for (std::size_t i = 0; i < logprod.size(); ++i)
            logprod[i] = d.quotient_log[i] + log_big(x.digit(i));
        const double slope = window_slope(logprod, d.window_begin);
        double window_max = -std::numeric_limits<double>::infinity();
        for (std::size_t i = static_cast<std::size_t>(d.window_begin); i < logprod.size(); ++i)
            window_max = std::max(window_max, logprod[i]);
        if (slope < -delta && window_max < 0) {
            rep.verdict = Verdict::Lambda0;
            rep.rule = "Prop5.4(ii): a_{k+1} nu/lambda quotient trending to 0";
            rep.margin = -slope;
        }
    }

    // Average-digit corroboration; presupposes generalized existence of the
    // derivative, so it never decides.
    const SpectralConstants sc = constants();
    double avg_tail_max = -std::numeric_limits<double>::infinity();
    double avg_tail_min = std::numeric_limits<double>::infinity();
    for (int k = d.window_begin; k < horizon; ++k) {
        avg_tail_max = std::max(avg_tail_max, d.avg_digit[static_cast<std::size_t>(k)]);
        avg_tail_min = std::min(avg_tail_min, d.avg_digit[static_cast<std::size_t>(k)]);
    }
    rep.pvb_inf_hint = avg_tail_max < sc.avg_digit_upper;
    rep.pvb_zero_hint = avg_tail_min > sc.rho;
    return rep;
}

CfSpec witness_straddle(const StraddleParams& params) {
    const double ln2 = std::log(2.0);
    const double thr = 1.0 / ln2;
    const double lo_target = thr - 0.05;
    const double hi_target = thr + 0.05;
    if (params.growth < 2) throw std::domain_error("witness_straddle: growth must be >= 2");
    if (params.horizon < 1000) throw std::domain_error("witness_straddle: horizon must be >= 1000");
    if (params.digit < 2) throw std::domain_error("witness_straddle: digit too small to straddle 1/h_top");
    const double c = params.digit.convert_to<double>();
    const double rate_c = std::log((c + std::sqrt(c * c + 4.0)) / 2.0);  // q-growth under constant digit c
    const double rate_1 = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    if (c / (2.0 * rate_c) < hi_target + 0.01)
        throw std::domain_error("witness_straddle: digit too small to straddle 1/h_top");

    const int horizon = params.horizon;
    // Warmup: short alternating doubling blocks, kept under 4% of the
    // horizon so they barely move the window statistics.
    std::vector<BigInt> head;
    {
        int len = 4;
        int kind = 0;
        while (static_cast<int>(head.size()) + len <= horizon / 25) {
            for (int j = 0; j < len; ++j) head.push_back(kind == 1 ? params.digit : BigInt(1));
            kind ^= 1;
            len *= 2;
        }
    }

    // Digit-sum / log-q model for placing the 1s->c switch. Good to O(1)
    // additive terms, which the 0.05 margins absorb; the classifier
    // re-measures with exact integers anyway.
    auto window_extremes = [&](int sstar) {
        double a_sum = 0, lq = 0;
        double rmin = std::numeric_limits<double>::infinity();
        double rmax = -rmin;
        const int wbegin = horizon - horizon / 4;
        for (int n = 1; n <= horizon; ++n) {
            double dig;
            if (n <= static_cast<int>(head.size()))
                dig = head[static_cast<std::size_t>(n - 1)].convert_to<double>();
            else
                dig = n <= sstar ? 1.0 : c;
            a_sum += dig;
            lq += dig == 1.0 ? rate_1 : rate_c;
            if (n > wbegin) {
                const double r = a_sum / (2.0 * lq);
                rmin = std::min(rmin, r);
                rmax = std::max(rmax, r);
            }
        }
        return std::pair{rmin, rmax};
    };

    int best_s = -1;
    double best_score = 0;
    for (int sstar = horizon - horizon / 4; sstar < horizon - 16; sstar += 16) {
        const auto [rmin, rmax] = window_extremes(sstar);
        const double score = std::min(lo_target - rmin, rmax - hi_target);
        if (score > best_score) {
            best_score = score;
            best_s = sstar;
        }
    }
    if (best_s < 0)
        throw std::domain_error("witness_straddle: parameters cannot straddle 1/h_top at this horizon");

    std::vector<BigInt> table = head;
    table.reserve(static_cast<std::size_t>(params.table_factor) * static_cast<std::size_t>(horizon));
    while (static_cast<int>(table.size()) < best_s) table.push_back(1);
    while (static_cast<int>(table.size()) < horizon) table.push_back(params.digit);
    // continue the alternation with geometric blocks out to the table edge
    std::size_t block = static_cast<std::size_t>(horizon);
    int kind = 0;
    const std::size_t limit = static_cast<std::size_t>(params.table_factor) * static_cast<std::size_t>(horizon);
    while (table.size() < limit) {
        block *= static_cast<std::size_t>(params.growth);
        for (std::size_t j = 0; j < block && table.size() < limit; ++j)
            table.push_back(kind == 1 ? params.digit : BigInt(1));
        kind ^= 1;
    }
    return CfSpec::explicit_table(std::move(table));
}

SalemReport salem_liminf_check(const CfSpec& x, int horizon) {
    const DiagnosticSeries d = diagnostics(x, horizon);
    SalemReport rep;
    const auto half = static_cast<std::ptrdiff_t>(d.quotient_log.size() / 2);
    rep.first_half_max = *std::max_element(d.quotient_log.begin(), d.quotient_log.begin() + half);
    rep.second_half_max = *std::max_element(d.quotient_log.begin() + half, d.quotient_log.end());
    rep.first_half_min = *std::min_element(d.quotient_log.begin(), d.quotient_log.begin() + half);
    rep.second_half_min = *std::min_element(d.quotient_log.begin() + half, d.quotient_log.end());
    rep.upward_trend = rep.second_half_max > rep.first_half_max + 1.0;
    rep.downward_trend = rep.second_half_min < rep.first_half_min - 1.0;
    return rep;
}

}  // namespace qmf
