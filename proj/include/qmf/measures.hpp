#pragma once

#include "qmf/cf.hpp"
#include "qmf/core.hpp"
#include "qmf/dyadic.hpp"
#include "qmf/stern_brocot.hpp"

#include <functional>

namespace qmf {

// nu_F([a,b)) = Q(b) - Q(a), exact dyadic.
Dyadic nu_F(const Rational& a, const Rational& b);

// Distribution function of the Gauss measure, log(1+x)/log 2.
double delta_gauss(double x);
double delta_gauss(const Rational& x);

struct QuadratureResult {
    double value = 0;
    int depth = 0;
    double error_bound = 0;
};

enum class QuadratureNode { Midpoint, LeftEndpoint };

// integral of f d(nu_F) as sum over level-n intervals of 2^-n f(xi); the
// error bound is the difference of the last two refinement levels.
QuadratureResult stieltjes_vs_Q(const std::function<double(double)>& f, int depth,
                                const FoldOptions& opt = {}, QuadratureNode node = QuadratureNode::Midpoint);

// Lyapunov exponent of the Farey map w.r.t. nu_F: 2 h_top E_nuF(delta_gauss).
QuadratureResult chi_nu_F(int depth, const FoldOptions& opt = {});

// h_top / chi.
QuadratureResult dim_nu_F(int depth, const FoldOptions& opt = {});

// integral of Q d(m_G) by composite Gauss-Legendre over Lebesgue measure,
// with Q evaluated exactly at rational nodes snapped onto bounded
// denominators; the snapping error is covered by Q's Holder modulus and is
// included in error_bound. `depth` reports the final panel count.
QuadratureResult expectation_mG_Q(int max_panels = 64, const FoldOptions& opt = {});

// A number carried as coefficient / 2^pow2_exponent with a float log view.
struct ExponentRatio {
    BigInt coefficient;
    BigInt pow2_exponent;
    double log_value = 0;  // log(coefficient) - pow2_exponent * log 2
};

// nu_F/lambda on the interval bounded by the k-th and (k+1)-th convergents:
// exactly 2 q_k q_{k+1} / 2^{A_{k+1}}.
ExponentRatio quotient_B(const CfSpec& x, int k);

// nu_F(T_n(x))/lambda(T_n(x)) = t_left t_right / 2^n in exact exponent form.
ExponentRatio nu_over_lambda(const CfSpec& x, int n);

}  // namespace qmf
