#pragma once

#include "qmf/cf.hpp"
#include "qmf/core.hpp"
#include "qmf/dyadic.hpp"

#include <utility>
#include <vector>

namespace qmf {

// x/(1-x) on [0,1/2], (1-x)/x on [1/2,1]; both branches agree at 1/2.
Rational farey_map(const Rational& x);

// 2x on [0,1/2], 2-2x on (1/2,1].
Rational tent_map(const Rational& y);
Dyadic tent_map(const Dyadic& y);

// f1(x) = x/(x+1), f2(x) = 1/(x+1); F(f_i(x)) == x.
std::pair<Rational, Rational> inverse_branches(const Rational& x);

// tent(Q(x)) == Q(farey(x)), exact.
bool conjugacy_check(const Rational& x);

enum class MapKind { Farey, Tent, Gauss };

// Exact orbit x, M(x), ..., M^steps(x).
std::vector<Rational> orbit(MapKind map, const Rational& x, int steps);

struct BirkhoffRecord {
    int n = 0;
    double s_n_I = 0;    // Birkhoff sum of log|G'| along the Gauss orbit
    BigInt s_n_N;        // digit sum a_1 + ... + a_n
    double ell_at_An = 0;  // Stern-Brocot quotient at level A_n
};

// S_n N exactly; S_n I from the exact convergent pair q_n, q_{n-1} plus a
// tail-value bracket, so the float enters only at the final log.
BirkhoffRecord birkhoff(const CfSpec& x, int n);

// (1/n) log(t_left t_right) for the level-n interval containing x.
double ell_n(const Rational& x, int n);
double ell_n(const CfSpec& x, int n);

}  // namespace qmf
