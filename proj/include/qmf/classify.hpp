#pragma once

#include "qmf/cf.hpp"
#include "qmf/core.hpp"

#include <string>
#include <vector>

namespace qmf {

// Per-index diagnostic series for the derivative criteria, exact-integer
// backed with float logs taken at the end.
struct DiagnosticSeries {
    int horizon = 0;
    std::vector<double> r;             // (sum a_i) / (2 log q_k)
    std::vector<double> quotient_log;  // log of 2 q_k q_{k+1} / 2^{A_{k+1}}, index k
    std::vector<double> ell_at_A;      // log(q_k (q_k + q_{k-1})) / A_k
    std::vector<double> avg_digit;     // A_k / k
    int window_begin = 0;              // tail window = last 25% of the horizon
    double r_window_min = 0;
    double r_window_max = 0;
    double r_window_mean = 0;
};

DiagnosticSeries diagnostics(const CfSpec& x, int horizon);

enum class Verdict { Lambda0, LambdaInf, LambdaTilde, Undetermined };

std::string verdict_name(Verdict v);

struct ClassificationReport {
    std::string input;
    int horizon = 0;
    double delta = 0;
    DiagnosticSeries diag;
    Verdict verdict = Verdict::Undetermined;
    std::string rule;   // which criterion fired
    double margin = 0;  // distance from the firing threshold
    // average-digit corroboration (never decides a verdict)
    bool pvb_inf_hint = false;
    bool pvb_zero_hint = false;
};

// Sufficient-criteria classification with explicit margins. The verdict is
// a claim that a criterion fired numerically at this horizon, not a proof.
ClassificationReport classify(const CfSpec& x, int horizon, double delta = 0.05);

struct StraddleParams {
    BigInt digit = 8;      // the large constant digit c
    int growth = 2;        // block growth factor past the target horizon
    int horizon = 10000;   // the diagnostics horizon the straddle is tuned for
    int table_factor = 6;  // explicit table length as a multiple of horizon
};

// An Explicit CfSpec alternating runs of 1s and runs of the digit c whose
// tail-window r-series straddles 1/h_top with margin at the target horizon.
// Throws std::domain_error when the digit is too small to straddle.
CfSpec witness_straddle(const StraddleParams& params = {});

struct SalemReport {
    bool upward_trend = false;    // tail max of the quotient logs keeps growing
    bool downward_trend = false;  // tail min keeps falling
    double first_half_max = 0;
    double second_half_max = 0;
    double first_half_min = 0;
    double second_half_min = 0;
};

// Trend report on the Eq-(B) quotient logs: an unbounded upward trend
// signals an infinite upper derivative, a downward one a vanishing lower
// derivative. Informational; corroborates LambdaTilde.
SalemReport salem_liminf_check(const CfSpec& x, int horizon);

}  // namespace qmf
