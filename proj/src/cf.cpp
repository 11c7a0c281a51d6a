#include "qmf/cf.hpp"

#include <algorithm>
#include <sstream>

namespace qmf {

namespace {

void check_digits_positive(const std::vector<BigInt>& digits, const char* what) {
    for (const BigInt& a : digits)
        if (a < 1) throw std::domain_error(std::string(what) + ": digits must be >= 1");
}

std::vector<BigInt> parse_digit_list(const std::string& s) {
    std::vector<BigInt> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw std::invalid_argument("empty digit in CF spec");
        out.emplace_back(item);
    }
    return out;
}

}  // namespace

CfSpec::CfSpec(std::vector<BigInt> prefix, CfTail tail) : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    check_digits_positive(prefix_, "CfSpec");
    check_digits_positive(tail_.digits, "CfSpec tail");
    switch (tail_.kind) {
        case TailKind::Finite:
            if (!tail_.digits.empty()) throw std::domain_error("Finite tail carries no digits");
            // canonical form: [..., a, 1] -> [..., a+1]
            if (prefix_.size() > 1 && prefix_.back() == 1) {
                prefix_.pop_back();
                prefix_.back() += 1;
            }
            break;
        case TailKind::Constant:
            if (tail_.digits.size() != 1) throw std::domain_error("Constant tail needs exactly one digit");
            break;
        case TailKind::Periodic:
            if (tail_.digits.empty()) throw std::domain_error("Periodic tail needs a non-empty cycle");
            break;
        case TailKind::Explicit:
            break;
    }
}

CfSpec CfSpec::finite(std::vector<BigInt> digits) {
    return CfSpec(std::move(digits), CfTail{TailKind::Finite, {}});
}

CfSpec CfSpec::constant(BigInt c) {
    return CfSpec({}, CfTail{TailKind::Constant, {std::move(c)}});
}

CfSpec CfSpec::periodic(std::vector<BigInt> cycle) {
    return CfSpec({}, CfTail{TailKind::Periodic, std::move(cycle)});
}

CfSpec CfSpec::explicit_table(std::vector<BigInt> table) {
    return CfSpec({}, CfTail{TailKind::Explicit, std::move(table)});
}

CfSpec CfSpec::from_rational(const Rational& x) {
    return finite(cf_expand(x));
}

const BigInt& CfSpec::digit(std::size_t i) const {
    if (i < prefix_.size()) return prefix_[i];
    const std::size_t j = i - prefix_.size();
    switch (tail_.kind) {
        case TailKind::Finite:
            throw DigitsExhausted("finite CF expansion has only " + std::to_string(prefix_.size()) + " digits");
        case TailKind::Constant:
            return tail_.digits[0];
        case TailKind::Periodic:
            return tail_.digits[j % tail_.digits.size()];
        case TailKind::Explicit:
            if (j >= tail_.digits.size())
                throw DigitsExhausted("explicit CF digit table exhausted at index " + std::to_string(i));
            return tail_.digits[j];
    }
    throw std::logic_error("unreachable");
}

bool CfSpec::has_digit(std::size_t i) const {
    if (i < prefix_.size()) return true;
    const std::size_t j = i - prefix_.size();
    switch (tail_.kind) {
        case TailKind::Finite: return false;
        case TailKind::Constant:
        case TailKind::Periodic: return true;
        case TailKind::Explicit: return j < tail_.digits.size();
    }
    return false;
}

std::size_t CfSpec::known_digits() const {
    switch (tail_.kind) {
        case TailKind::Finite:
        case TailKind::Explicit: return prefix_.size() + tail_.digits.size();
        default: return std::numeric_limits<std::size_t>::max();
    }
}

CfSpec CfSpec::shifted(std::size_t k) const {
    if (k <= prefix_.size()) {
        std::vector<BigInt> rest(prefix_.begin() + static_cast<std::ptrdiff_t>(k), prefix_.end());
        return CfSpec(std::move(rest), tail_);
    }
    const std::size_t j = k - prefix_.size();
    switch (tail_.kind) {
        case TailKind::Finite:
            throw DigitsExhausted("cannot shift a finite CF past its end");
        case TailKind::Constant:
            return *this;
        case TailKind::Periodic: {
            const std::size_t r = j % tail_.digits.size();
            std::vector<BigInt> cycle(tail_.digits.begin() + static_cast<std::ptrdiff_t>(r), tail_.digits.end());
            cycle.insert(cycle.end(), tail_.digits.begin(), tail_.digits.begin() + static_cast<std::ptrdiff_t>(r));
            return periodic(std::move(cycle));
        }
        case TailKind::Explicit: {
            if (j > tail_.digits.size()) throw DigitsExhausted("cannot shift an explicit CF past its table");
            std::vector<BigInt> rest(tail_.digits.begin() + static_cast<std::ptrdiff_t>(j), tail_.digits.end());
            return explicit_table(std::move(rest));
        }
    }
    throw std::logic_error("unreachable");
}

Rational CfSpec::value() const {
    if (!is_rational()) throw std::domain_error("CfSpec value is only defined for Finite tails");
    return cf_eval(prefix_);
}

CfSpec CfSpec::parse(const std::string& s) {
    const auto semi = s.find(';');
    std::vector<BigInt> prefix = semi == 0 ? std::vector<BigInt>{} : parse_digit_list(s.substr(0, semi));
    if (semi == std::string::npos) return finite(std::move(prefix));
    std::string t = s.substr(semi + 1);
    if (t.rfind("tail=", 0) != 0) throw std::invalid_argument("expected ';tail=...' in CF spec: '" + s + "'");
    t = t.substr(5);
    if (t.rfind("const:", 0) == 0) return CfSpec(std::move(prefix), CfTail{TailKind::Constant, parse_digit_list(t.substr(6))});
    if (t.rfind("periodic:", 0) == 0) return CfSpec(std::move(prefix), CfTail{TailKind::Periodic, parse_digit_list(t.substr(9))});
    if (t.rfind("explicit:", 0) == 0) return CfSpec(std::move(prefix), CfTail{TailKind::Explicit, parse_digit_list(t.substr(9))});
    throw std::invalid_argument("unknown CF tail '" + t + "'");
}

std::string CfSpec::str() const {
    std::string out;
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i) out += ',';
        out += prefix_[i].str();
    }
    auto list = [&](const std::vector<BigInt>& v) {
        std::string r;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) r += ',';
            r += v[i].str();
        }
        return r;
    };
    switch (tail_.kind) {
        case TailKind::Finite: break;
        case TailKind::Constant: out += ";tail=const:" + list(tail_.digits); break;
        case TailKind::Periodic: out += ";tail=periodic:" + list(tail_.digits); break;
        case TailKind::Explicit: out += ";tail=explicit:" + list(tail_.digits); break;
    }
    return out;
}

std::vector<BigInt> cf_expand(const Rational& x) {
    if (!(x > 0 && x < 1)) throw std::domain_error("cf_expand requires 0 < x < 1");
    BigInt p = num(x), q = den(x);
    std::vector<BigInt> digits;
    while (p != 0) {
        BigInt a = q / p;
        BigInt r = q % p;
        digits.push_back(std::move(a));
        q = p;
        p = std::move(r);
    }
    return digits;
}

Rational cf_eval(std::span<const BigInt> digits) {
    // Forward convergent recurrence; tolerates zero digits algebraically.
    BigInt p_prev = 1, q_prev = 0, p = 0, q = 1;
    for (const BigInt& a : digits) {
        BigInt pn = a * p + p_prev;
        BigInt qn = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(pn);
        q = std::move(qn);
    }
    if (q == 0) throw std::domain_error("cf_eval of a list with no finite value");
    return make_rational(p, q);
}

std::vector<Convergent> convergents(const CfSpec& x, int k_max) {
    if (k_max < 0) throw std::domain_error("convergents: k_max must be >= 0");
    std::vector<Convergent> out;
    out.reserve(static_cast<std::size_t>(k_max));
    BigInt p_prev = 1, q_prev = 0, p = 0, q = 1;
    for (int k = 1; k <= k_max; ++k) {
        if (!x.has_digit(static_cast<std::size_t>(k - 1)))
            throw DigitsExhausted("convergents: only " + std::to_string(k - 1) + " digits available");
        const BigInt& a = x.digit(static_cast<std::size_t>(k - 1));
        BigInt pn = a * p + p_prev;
        BigInt qn = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = std::move(pn);
        q = std::move(qn);
        out.push_back({k, p, q});
    }
    return out;
}

namespace {

// (p_{k-1}, q_{k-1}, p_k, q_k) with the standard seeds; k >= 0.
struct ConvPair {
    BigInt p_prev, q_prev, p, q;
};

ConvPair convergent_pair(const CfSpec& x, int k) {
    ConvPair c{1, 0, 0, 1};
    for (int i = 1; i <= k; ++i) {
        const BigInt& a = x.digit(static_cast<std::size_t>(i - 1));
        BigInt pn = a * c.p + c.p_prev;
        BigInt qn = a * c.q + c.q_prev;
        c.p_prev = std::move(c.p);
        c.q_prev = std::move(c.q);
        c.p = std::move(pn);
        c.q = std::move(qn);
    }
    return c;
}

}  // namespace

Rational intermediate_convergent(const CfSpec& x, int k, const BigInt& m) {
    if (k < 0) throw std::domain_error("intermediate_convergent: k must be >= 0");
    if (m < 0) throw std::out_of_range("intermediate_convergent: m must be >= 0");
    if (!x.has_digit(static_cast<std::size_t>(k)))
        throw DigitsExhausted("intermediate_convergent: digit a_{k+1} unavailable");
    if (m > x.digit(static_cast<std::size_t>(k)))
        throw std::out_of_range("intermediate_convergent: m exceeds a_{k+1}");
    const ConvPair c = convergent_pair(x, k);
    return make_rational(m * c.p + c.p_prev, m * c.q + c.q_prev);
}

Rational micro_intermediate_convergent(const CfSpec& x, int k, const BigInt& n) {
    if (k < 0) throw std::domain_error("micro_intermediate_convergent: k must be >= 0");
    if (n < 1) throw std::out_of_range("micro_intermediate_convergent: n must be >= 1");
    if (!x.has_digit(static_cast<std::size_t>(k)))
        throw DigitsExhausted("micro_intermediate_convergent: digits a_1..a_{k+1} unavailable");
    const ConvPair c = convergent_pair(x, k + 1);
    // c now holds (p_k, q_k, p_{k+1}, q_{k+1}).
    return make_rational(n * c.p - c.p_prev, n * c.q - c.q_prev);
}

Remainder remainder(const CfSpec& x, int n) {
    if (n < 1) throw std::domain_error("remainder: n must be >= 1");
    if (!x.has_digit(static_cast<std::size_t>(n - 1)))
        throw DigitsExhausted("remainder: digit a_n unavailable");
    return Remainder{x.digit(static_cast<std::size_t>(n - 1)), x.shifted(static_cast<std::size_t>(n))};
}

BigInt digit_sum(const CfSpec& x, int n) {
    if (n < 0) throw std::domain_error("digit_sum: n must be >= 0");
    BigInt s = 0;
    for (int i = 0; i < n; ++i) {
        if (!x.has_digit(static_cast<std::size_t>(i)))
            throw DigitsExhausted("digit_sum: only " + std::to_string(i) + " digits available");
        s += x.digit(static_cast<std::size_t>(i));
    }
    return s;
}

Rational gauss_map(const Rational& x) {
    if (x == 0) return Rational(0);
    if (!(x > 0 && x < 1)) throw std::domain_error("gauss_map requires 0 <= x < 1");
    const BigInt p = num(x), q = den(x);
    return make_rational(q % p, p);
}

}  // namespace qmf
