#include "qmf/pressure.hpp"

#include "qmf/parallel.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>

namespace qmf {

namespace {

// Online log-sum-exp with compensated accumulation.
struct LseAcc {
    double max_w = -std::numeric_limits<double>::infinity();
    double sum = 0;
    double comp = 0;

    void add_log(double w) {
        if (w > max_w) {
            if (sum != 0) {
                const double scale = std::exp(max_w - w);
                sum *= scale;
                comp *= scale;
            }
            max_w = w;
        }
        const double v = std::exp(w - max_w);
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    void merge(const LseAcc& o) {
        if (o.sum == 0) return;
        if (o.max_w > max_w) {
            const double scale = max_w == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(max_w - o.max_w);
            sum = sum * scale + o.sum;
            comp = 0;
            max_w = o.max_w;
        } else {
            sum += o.sum * std::exp(o.max_w - max_w);
        }
    }

    double log_value() const { return max_w + std::log(sum); }
};

}  // namespace

double pressure_level(double t, int n, const FoldOptions& opt, int cap) {
    if (n < 0 || n > cap) throw std::domain_error("pressure_level: depth exceeds cap " + std::to_string(cap));
    if (n == 0) return t * 0.0;  // single interval of length 1
    LseAcc total = fold_pairs<LseAcc>(
        n, opt,
        [t](LseAcc& acc, std::uint64_t a, std::uint64_t b) { acc.add_log(-t * std::log(static_cast<double>(a) * static_cast<double>(b))); },
        [](LseAcc& tot, LseAcc&& part) { tot.merge(part); });
    return total.log_value();
}

namespace {

PressureEstimate estimate_from_ladder(double t, std::vector<std::pair<int, double>> ladder) {
    PressureEstimate est;
    est.t = t;
    est.levels = std::move(ladder);
    if (t >= 1.0) {
        est.exact_zero = true;
        est.estimate = 0.0;
        est.error = 0.0;
        return est;
    }
    std::vector<double> diffs;
    for (std::size_t i = 1; i < est.levels.size(); ++i)
        diffs.push_back(est.levels[i].second - est.levels[i - 1].second);
    if (diffs.size() < 3) throw std::domain_error("pressure estimate needs at least four ladder levels");
    std::vector<double> acc;
    for (std::size_t i = 0; i + 2 < diffs.size(); ++i) {
        const double d0 = diffs[i], d1 = diffs[i + 1], d2 = diffs[i + 2];
        const double denom = (d2 - d1) - (d1 - d0);
        acc.push_back(std::abs(denom) < 1e-14 ? d2 : d2 - (d2 - d1) * (d2 - d1) / denom);
    }
    est.estimate = acc.back();
    est.error = acc.size() >= 2 ? std::abs(acc.back() - acc[acc.size() - 2]) : 0.0;
    // oscillation diagnostic on the raw differences
    int sign_flips = 0;
    for (std::size_t i = 2; i < diffs.size(); ++i) {
        const double a = diffs[i] - diffs[i - 1];
        const double b = diffs[i - 1] - diffs[i - 2];
        if (a * b < 0 && std::abs(a) > 1e-12 && std::abs(b) > 1e-12) ++sign_flips;
    }
    est.converged = sign_flips <= 1 || est.error < 1e-6;
    return est;
}

}  // namespace

PressureEstimate pressure(double t, int n_max, const FoldOptions& opt) {
    if (t >= 1.0) return estimate_from_ladder(t, {});
    if (n_max < 5) throw std::domain_error("pressure: n_max must be >= 5");
    const int n_lo = std::max(1, n_max - 8);
    std::vector<std::pair<int, double>> ladder;
    for (int n = n_lo; n <= n_max; ++n) ladder.emplace_back(n, pressure_level(t, n, opt));
    return estimate_from_ladder(t, std::move(ladder));
}

PressureLadder::PressureLadder(int n_min, int n_max, const FoldOptions& opt, double bin_width)
    : n_min_(n_min), n_max_(n_max) {
    if (n_min < 1 || n_max < n_min) throw std::domain_error("PressureLadder: bad level range");
    if (n_max > kFoldLevelCap) throw std::domain_error("PressureLadder: level cap exceeded");
    if (!(bin_width > 0)) throw std::domain_error("PressureLadder: bin width must be positive");
    const double log_gamma = std::log((1.0 + std::sqrt(5.0)) / 2.0);
    // fixed-point scale for exact, order-independent accumulation
    constexpr double kScale = 4503599627370496.0;  // 2^52

    levels_.reserve(static_cast<std::size_t>(n_max - n_min + 1));
    for (int n = n_min; n <= n_max; ++n) {
        const double w_lo = std::log(static_cast<double>(n) + 1.0) - bin_width;
        const double w_hi = (2.0 * n + 3.0) * log_gamma + 1.0;
        const std::size_t bins = static_cast<std::size_t>((w_hi - w_lo) / bin_width) + 2;

        const int workers = std::max(1, opt.workers);
        std::vector<std::vector<std::uint64_t>> counts(static_cast<std::size_t>(workers));
        std::vector<std::vector<__int128>> sums(static_cast<std::size_t>(workers));

        const int frontier = std::min(opt.frontier < 0 ? 0 : opt.frontier, n);
        std::vector<std::pair<std::uint64_t, std::uint64_t>> front;
        detail::frontier_pairs(frontier, front);

        std::atomic<std::size_t> next{0};
        auto run = [&](int wid) {
            auto& cnt = counts[static_cast<std::size_t>(wid)];
            auto& sw = sums[static_cast<std::size_t>(wid)];
            cnt.assign(bins, 0);
            sw.assign(bins, 0);
            for (;;) {
                const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
                if (i >= front.size()) return;
                detail::walk_pairs(front[i].first, front[i].second, n - frontier,
                                   [&](std::uint64_t a, std::uint64_t b) {
                                       const double w = std::log(static_cast<double>(a) * static_cast<double>(b));
                                       const auto bin = static_cast<std::size_t>((w - w_lo) / bin_width);
                                       cnt[bin] += 1;
                                       sw[bin] += static_cast<__int128>(std::llround(w * kScale));
                                   });
            }
        };
        std::vector<std::thread> pool;
        for (int wdx = 1; wdx < workers; ++wdx) pool.emplace_back(run, wdx);
        run(0);
        for (auto& th : pool) th.join();

        Level lvl;
        lvl.n = n;
        for (std::size_t b = 0; b < bins; ++b) {
            std::uint64_t c = 0;
            __int128 s = 0;
            for (int wdx = 0; wdx < workers; ++wdx) {
                c += counts[static_cast<std::size_t>(wdx)][b];
                s += sums[static_cast<std::size_t>(wdx)][b];
            }
            if (c == 0) continue;
            lvl.log_count.push_back(std::log(static_cast<double>(c)));
            lvl.w_mean.push_back(static_cast<double>(s) / (kScale * static_cast<double>(c)));
        }
        levels_.push_back(std::move(lvl));
    }
}

double PressureLadder::level_value(double t, int n) const {
    if (n < n_min_ || n > n_max_) throw std::out_of_range("PressureLadder: level outside the built range");
    const Level& lvl = levels_[static_cast<std::size_t>(n - n_min_)];
    LseAcc acc;
    for (std::size_t b = 0; b < lvl.log_count.size(); ++b) acc.add_log(lvl.log_count[b] - t * lvl.w_mean[b]);
    return acc.log_value();
}

PressureEstimate PressureLadder::estimate(double t) const {
    if (t >= 1.0) return estimate_from_ladder(t, {});
    std::vector<std::pair<int, double>> ladder;
    for (int n = n_min_; n <= n_max_; ++n) ladder.emplace_back(n, level_value(t, n));
    return estimate_from_ladder(t, std::move(ladder));
}

std::function<double(double)> PressureLadder::as_function() const {
    return [this](double t) {
        if (t >= 1.0) return 0.0;
        {
            std::lock_guard<std::mutex> lock(memo_mutex_);
            const auto it = memo_.find(t);
            if (it != memo_.end()) return it->second;
        }
        const double v = estimate(t).estimate;
        std::lock_guard<std::mutex> lock(memo_mutex_);
        memo_[t] = v;
        return v;
    };
}

LegendreResult legendre_hat(double s, const std::function<double(double)>& pressure_fn, double t_min, double t_max,
                            double tol) {
    if (!(t_min < t_max)) throw std::domain_error("legendre_hat: empty search window");
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    auto g = [&](double t) { return s * t - pressure_fn(t); };
    double a = t_min, b = t_max;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double gc = g(c), gd = g(d);
    while (b - a > tol) {
        if (gc > gd) {
            b = d;
            d = c;
            gd = gc;
            c = b - gr * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + gr * (b - a);
            gd = g(d);
        }
    }
    LegendreResult r;
    r.s = s;
    r.t_star = 0.5 * (a + b);
    r.value = std::max(gc, gd);
    const double edge = 1e-6 * (t_max - t_min);
    r.lower_boundary = r.t_star - t_min < edge;
    r.upper_boundary = t_max - r.t_star < edge;
    // P vanishes on [1, inf): for s < 0 the objective -|s| t - P(t) can only
    // fall beyond t_max = 1, so an upper pin is a genuine maximizer there.
    return r;
}

SpectrumPoint dimension(double s, const std::function<double(double)>& pressure_fn, double t_min) {
    SpectrumPoint pt;
    pt.s = s;
    const double upper = constants().two_log_gamma;
    if (s < 0 || s >= upper) {
        pt.d = 0.0;
        pt.convention = true;
        return pt;
    }
    if (s == 0) {
        pt.d = 1.0;
        pt.convention = true;
        return pt;
    }
    const LegendreResult leg = legendre_hat(-s, pressure_fn, t_min, 1.0);
    pt.t_star = leg.t_star;
    pt.legendre = leg.value;
    pt.lower_boundary = leg.lower_boundary;
    pt.upper_boundary = leg.upper_boundary;
    pt.d = std::min(1.0, std::max(0.0, -leg.value / s));
    return pt;
}

std::vector<SpectrumPoint> spectrum_table(const std::vector<double>& grid,
                                          const std::function<double(double)>& pressure_fn, double t_min) {
    std::vector<SpectrumPoint> out;
    out.reserve(grid.size());
    for (const double s : grid) out.push_back(dimension(s, pressure_fn, t_min));
    for (std::size_t i = 1; i < out.size(); ++i) {
        if (out[i].s > out[i - 1].s && out[i].d > out[i - 1].d + 1e-7)
            throw std::logic_error("spectrum_table: d-values not monotone non-increasing");
    }
    return out;
}

SpectralConstants constants() {
    SpectralConstants c;
    const double gamma = (1.0 + std::sqrt(5.0)) / 2.0;
    c.two_log_gamma = 2.0 * std::log(gamma);
    c.holder_exponent = std::log(2.0) / c.two_log_gamma;
    c.avg_digit_upper = c.two_log_gamma / std::log(2.0);
    // (1+rho)^(1/rho) = sqrt 2  <=>  log1p(rho)/rho = (log 2)/2; the left
    // side is strictly decreasing, so bisection is safe.
    const double target = 0.5 * std::log(2.0);
    double lo = 1.0, hi = 32.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        (std::log1p(mid) / mid > target ? lo : hi) = mid;
    }
    c.rho = 0.5 * (lo + hi);
    return c;
}

}  // namespace qmf
