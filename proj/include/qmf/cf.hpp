#pragma once

#include "qmf/core.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmf {

// Thrown when an operation needs more digits than the spec can supply
// (Finite expansion consumed, or an Explicit table exhausted).
class DigitsExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class TailKind { Finite, Periodic, Constant, Explicit };

struct CfTail {
    TailKind kind = TailKind::Finite;
    // Periodic: the repeating cycle. Constant: single entry. Explicit: the
    // bounded digit table. Finite: empty.
    std::vector<BigInt> digits;
};

// A point of (0,1) described by a continued-fraction digit prefix plus a
// tail rule. All digits are >= 1. Finite specs are rationals and are kept
// canonical (no trailing digit 1 unless the expansion is a single digit).
class CfSpec {
  public:
    CfSpec() = default;
    CfSpec(std::vector<BigInt> prefix, CfTail tail);

    static CfSpec finite(std::vector<BigInt> digits);
    static CfSpec constant(BigInt c);
    static CfSpec periodic(std::vector<BigInt> cycle);
    static CfSpec explicit_table(std::vector<BigInt> table);
    static CfSpec from_rational(const Rational& x);

    const std::vector<BigInt>& prefix() const { return prefix_; }
    const CfTail& tail() const { return tail_; }

    // Digit a_{i+1} (zero-based index). Throws DigitsExhausted past the end
    // of a Finite expansion or an Explicit table.
    const BigInt& digit(std::size_t i) const;
    bool has_digit(std::size_t i) const;

    bool is_rational() const { return tail_.kind == TailKind::Finite; }
    // Number of digits of a Finite expansion; digits available at all for
    // Explicit tables.
    std::size_t known_digits() const;

    // The spec with the first k digits dropped, preserving the tail rule.
    CfSpec shifted(std::size_t k) const;

    // Exact value for Finite specs only.
    Rational value() const;

    // Grammar: "a1,a2,...,am" optionally followed by ";tail=const:c",
    // ";tail=periodic:b1,b2,..." or ";tail=explicit:d1,d2,..." (bounded
    // table appended after the prefix). Nothing after the list means Finite.
    static CfSpec parse(const std::string& s);
    std::string str() const;

  private:
    std::vector<BigInt> prefix_;
    CfTail tail_;
};

// Euclidean expansion of x in (0,1); canonical (last digit != 1 unless the
// expansion is the single digit case).
std::vector<BigInt> cf_expand(const Rational& x);

// Value of a finite digit list. Digits may be zero here (the evaluation is
// purely algebraic); used by tests that build non-canonical lists.
Rational cf_eval(std::span<const BigInt> digits);

struct Convergent {
    int k = 0;
    BigInt p;
    BigInt q;
};

// Convergents p_1/q_1 .. p_kmax/q_kmax by the standard recurrence with
// seeds p_{-1}=1, q_{-1}=0, p_0=0, q_0=1.
std::vector<Convergent> convergents(const CfSpec& x, int k_max);

// (m p_k + p_{k-1}) / (m q_k + q_{k-1}) for 0 <= m <= a_{k+1}.
Rational intermediate_convergent(const CfSpec& x, int k, const BigInt& m);

// (n p_{k+1} - p_k) / (n q_{k+1} - q_k) for n >= 1.
Rational micro_intermediate_convergent(const CfSpec& x, int k, const BigInt& n);

struct Remainder {
    BigInt integer_part;  // a_n
    CfSpec fractional;    // [a_{n+1}, a_{n+2}, ...]
};

// r_n = [a_n; a_{n+1}, ...], 1-based n.
Remainder remainder(const CfSpec& x, int n);

BigInt digit_sum(const CfSpec& x, int n);

// Fractional part of 1/x on (0,1); gauss_map(0) = 0 by convention.
Rational gauss_map(const Rational& x);

}  // namespace qmf
