#pragma once

#include "qmf/cf.hpp"
#include "qmf/core.hpp"
#include "qmf/dyadic.hpp"
#include "qmf/stern_brocot.hpp"

namespace qmf {

// Exact value of the question mark function at a rational point, via the
// two-term recursion over its CF digits. Rationals always land on a finite
// dyadic.
Dyadic q_eval(const Rational& x);

// One step of the recursion: given Q_{k-1}, Q_k and a_{k+1}, returns
// Q_{k+1} = Q_{k-1} +/- (1 - 2^{-a_{k+1}}) |Q_k - Q_{k-1}|, sign + for k
// odd, - for k even.
Dyadic q_recursion_step(const Dyadic& q_km1, const Dyadic& q_k, const BigInt& a_k1, int k);

struct DyadicEnclosure {
    Dyadic lower;
    Dyadic upper;
    int level = 0;  // upper - lower == 2^-level
};

// Rigorous width-2^-N enclosure of Q(x): the dyadic image of T_N(x).
DyadicEnclosure q_enclose(const CfSpec& x, int N);

// The unique rational x with q_eval(x) == y, by walking the dyadic digits
// of y down the tree.
Rational q_inverse(const Dyadic& y);

// Q(mediant) == average of endpoint Q-values; exact test surface.
bool mediant_identity_check(const SbInterval& iv);

}  // namespace qmf
