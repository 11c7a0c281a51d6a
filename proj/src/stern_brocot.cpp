#include "qmf/stern_brocot.hpp"

#include <optional>
#include <stdexcept>

namespace qmf {

std::vector<Rational> sb_sequence(int n, int cap) {
    if (n < 0) throw std::domain_error("sb_sequence: n must be >= 0");
    if (n > cap) throw std::domain_error("sb_sequence: n exceeds the memory cap " + std::to_string(cap));
    std::vector<Rational> seq{Rational(0), Rational(1)};
    for (int lvl = 1; lvl <= n; ++lvl) {
        std::vector<Rational> next;
        next.reserve(2 * seq.size() - 1);
        for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
            next.push_back(seq[k]);
            next.push_back(mediant(seq[k], seq[k + 1]));
        }
        next.push_back(seq.back());
        seq = std::move(next);
    }
    return seq;
}

std::pair<SbInterval, SbInterval> sb_children(const SbInterval& iv) {
    Rational m = mediant(iv.left, iv.right);
    SbInterval l{iv.level + 1, iv.index * 2, iv.left, m};
    SbInterval r{iv.level + 1, iv.index * 2 + 1, std::move(m), iv.right};
    return {std::move(l), std::move(r)};
}

namespace {

// Decides x <=> m for a CfSpec point from a shrinking convergent bracket.
// Even convergents approach from below, odd from above, and an irrational
// spec lies strictly between them, so every rational m is excluded after
// finitely many digits. Finite specs compare exactly.
class CfComparator {
  public:
    explicit CfComparator(const CfSpec& x) : x_(&x) {
        if (x.is_rational()) exact_ = x.value();
    }

    // -1: x < m, 0: x == m (Finite specs only), +1: x > m.
    int compare(const Rational& m) {
        if (exact_) {
            if (*exact_ < m) return -1;
            return *exact_ > m ? 1 : 0;
        }
        const BigInt& mp = num(m);
        const BigInt& mq = den(m);
        for (;;) {
            if (mp * lo_q_ <= lo_p_ * mq) return 1;   // m <= lo < x
            if (mp * hi_q_ >= hi_p_ * mq) return -1;  // x < hi <= m
            pull_digit();
        }
    }

  private:
    void pull_digit() {
        if (!x_->has_digit(k_))
            throw DigitsExhausted("insufficient CF digits to decide a Stern-Brocot comparison");
        const BigInt& a = x_->digit(k_);
        BigInt pn = a * p_ + p_prev_;
        BigInt qn = a * q_ + q_prev_;
        p_prev_ = std::move(p_);
        q_prev_ = std::move(q_);
        p_ = std::move(pn);
        q_ = std::move(qn);
        ++k_;
        if (k_ % 2 == 1) {  // odd convergent: upper bound
            hi_p_ = p_;
            hi_q_ = q_;
        } else {  // even convergent: lower bound
            lo_p_ = p_;
            lo_q_ = q_;
        }
    }

    const CfSpec* x_;
    std::optional<Rational> exact_;
    std::size_t k_ = 0;
    BigInt p_prev_ = 1, q_prev_ = 0, p_ = 0, q_ = 1;
    BigInt lo_p_ = 0, lo_q_ = 1;  // p_0/q_0 = 0
    BigInt hi_p_ = 1, hi_q_ = 1;  // x < 1
};

template <class LessThanMediant>
DescentPath descend_impl(int n, LessThanMediant&& below) {
    if (n < 0) throw std::domain_error("descend: n must be >= 0");
    DescentPath path;
    path.dirs.reserve(static_cast<std::size_t>(n));
    BigInt lp = 0, lq = 1, rp = 1, rq = 1;
    BigInt index = 0;
    for (int lvl = 0; lvl < n; ++lvl) {
        BigInt mp = lp + rp;
        BigInt mq = lq + rq;
        if (below(mp, mq)) {
            rp = std::move(mp);
            rq = std::move(mq);
            path.dirs.push_back(0);
            index <<= 1;
        } else {
            lp = std::move(mp);
            lq = std::move(mq);
            path.dirs.push_back(1);
            index <<= 1;
            index += 1;
        }
    }
    path.interval =
        SbInterval{n, std::move(index), make_rational(std::move(lp), std::move(lq)), make_rational(std::move(rp), std::move(rq))};
    return path;
}

}  // namespace

DescentPath descend(const Rational& x, int n) {
    if (x < 0 || x >= 1) throw std::domain_error("descend: requires 0 <= x < 1");
    const BigInt& xp = num(x);
    const BigInt& xq = den(x);
    return descend_impl(n, [&](const BigInt& mp, const BigInt& mq) { return xp * mq < mp * xq; });
}

DescentPath descend(const CfSpec& x, int n) {
    CfComparator cmp(x);
    return descend_impl(n, [&](const BigInt& mp, const BigInt& mq) {
        return cmp.compare(make_rational(mp, mq)) < 0;
    });
}

SbInterval locate(const Rational& x, int n) { return descend(x, n).interval; }
SbInterval locate(const CfSpec& x, int n) { return descend(x, n).interval; }

namespace {

bool type_change_from_path(const DescentPath& path, int n) {
    return path.dirs.at(static_cast<std::size_t>(n - 1)) != path.dirs.at(static_cast<std::size_t>(n));
}

}  // namespace

bool type_change(const Rational& x, int n) {
    if (n < 1) throw std::domain_error("type_change: n must be >= 1");
    return type_change_from_path(descend(x, n + 1), n);
}

bool type_change(const CfSpec& x, int n) {
    if (n < 1) throw std::domain_error("type_change: n must be >= 1");
    return type_change_from_path(descend(x, n + 1), n);
}

}  // namespace qmf
