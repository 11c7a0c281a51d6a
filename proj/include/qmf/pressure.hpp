#pragma once

#include "qmf/core.hpp"
#include "qmf/stern_brocot.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <vector>

namespace qmf {

// L_n(t) = log sum over level-n intervals of lambda(T)^t, evaluated leaf by
// leaf in the log domain (max-shifted, compensated). Partial results merge
// in fixed subtree order, so the value is identical for any worker count.
double pressure_level(double t, int n, const FoldOptions& opt = {}, int cap = 30);

struct PressureEstimate {
    double t = 0;
    std::vector<std::pair<int, double>> levels;  // (n, L_n) ladder
    double estimate = 0;
    double error = 0;        // |difference of the last two accelerated values|
    bool exact_zero = false; // t >= 1 short-circuit
    bool converged = true;   // false when the difference ladder oscillates
};

// Cauchy-difference estimate L_n - L_{n-1} with Aitken acceleration, from
// direct pressure_level evaluations up to n_max.
PressureEstimate pressure(double t, int n_max, const FoldOptions& opt = {});

// Histogram-compressed ladder of levels [n_min, n_max]: one tree pass per
// level records (count, mean log t_l t_r) per bin, after which L_n(t) is a
// cheap bin sum for any t. Bin means keep the within-bin error second
// order: |L_n error| <= t^2 h^2 / 8, about 1e-8 at |t| = 40 for the default
// width. Per-bin tallies are exact integers (fixed-point), so the built
// tables are identical for any worker count or schedule.
class PressureLadder {
  public:
    PressureLadder(int n_min, int n_max, const FoldOptions& opt = {}, double bin_width = 2e-4);

    int n_min() const { return n_min_; }
    int n_max() const { return n_max_; }

    double level_value(double t, int n) const;

    // Same estimator as pressure() but over the histogram ladder; memoized.
    PressureEstimate estimate(double t) const;

    // as a plain callable for the Legendre search
    std::function<double(double)> as_function() const;

  private:
    struct Level {
        int n = 0;
        std::vector<double> log_count;
        std::vector<double> w_mean;
    };
    int n_min_, n_max_;
    std::vector<Level> levels_;
    mutable std::mutex memo_mutex_;
    mutable std::map<double, double> memo_;
};

struct LegendreResult {
    double s = 0;
    double t_star = 0;
    double value = 0;  // sup_t { s t - P(t) }
    bool lower_boundary = false;  // maximizer pinned at t_min
    bool upper_boundary = false;  // maximizer pinned at t_max
};

// Golden-section maximization of the concave map t -> s t - P(t) over
// [t_min, t_max], to tolerance `tol` in t.
LegendreResult legendre_hat(double s, const std::function<double(double)>& pressure_fn, double t_min = -40.0,
                            double t_max = 1.0, double tol = 1e-9);

struct SpectrumPoint {
    double s = 0;
    double t_star = 0;
    double legendre = 0;  // \hat P(-s)
    double d = 0;
    bool lower_boundary = false;
    bool upper_boundary = false;
    bool convention = false;  // value fixed by rule rather than computed
};

// d(s) = -\hat P(-s)/s on (0, 2 log gamma); d(0) = 1 by convention; 0
// outside [0, 2 log gamma).
SpectrumPoint dimension(double s, const std::function<double(double)>& pressure_fn, double t_min = -40.0);

// Applies dimension() across the grid and asserts the d-values are
// monotone non-increasing (tolerance 1e-7).
std::vector<SpectrumPoint> spectrum_table(const std::vector<double>& grid,
                                          const std::function<double(double)>& pressure_fn,
                                          double t_min = -40.0);

struct SpectralConstants {
    double two_log_gamma = 0;       // upper end of the spectrum, ~0.9624
    double holder_exponent = 0;     // log 2 / (2 log gamma), ~0.7202
    double avg_digit_upper = 0;     // same quantity in base-2 logs, ~1.3884
    double rho = 0;                 // (1+rho)^(1/rho) = sqrt 2, ~5.3197
};

SpectralConstants constants();

}  // namespace qmf
