#pragma once

#include "qmf/cf.hpp"
#include "qmf/core.hpp"
#include "qmf/parallel.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace qmf {

// Half-open interval [left, right) of the level-n refinement; index k runs
// left to right in [0, 2^n).
struct SbInterval {
    int level = 0;
    BigInt index;
    Rational left;
    Rational right;
};

inline SbInterval sb_root() { return {0, 0, Rational(0), Rational(1)}; }

// Endpoints of the order-n Stern-Brocot sequence, 2^n + 1 values in
// increasing order. Guarded by a memory cap (default 20).
std::vector<Rational> sb_sequence(int n, int cap = 20);

// Split at the mediant; children carry level n+1 and indices 2k, 2k+1.
std::pair<SbInterval, SbInterval> sb_children(const SbInterval& iv);

struct DescentPath {
    SbInterval interval;             // T_n(x)
    std::vector<std::uint8_t> dirs;  // 0 = left child, 1 = right child, one per level
};

// Mediant-comparison descent to depth n; exact for rational x. For CfSpec
// input the comparisons are decided from a shrinking convergent bracket and
// throw DigitsExhausted when the spec cannot separate x from a mediant.
DescentPath descend(const Rational& x, int n);
DescentPath descend(const CfSpec& x, int n);

SbInterval locate(const Rational& x, int n);
SbInterval locate(const CfSpec& x, int n);

// True iff the descent direction flips between steps n and n+1, i.e. the
// triple T_{n-1}(x), T_n(x), T_{n+1}(x) is not nested on one side.
bool type_change(const Rational& x, int n);
bool type_change(const CfSpec& x, int n);

struct FoldOptions {
    int frontier = 12;  // subtree partition level (clamped to n)
    int workers = 1;
};

inline constexpr int kFoldLevelCap = 34;  // fib(36)^2 still fits in 64 bits

namespace detail {

// Left-to-right frontier pairs at level m (at most 2^m of them).
inline void frontier_pairs(int m, std::vector<std::pair<std::uint64_t, std::uint64_t>>& out) {
    out.clear();
    out.reserve(std::size_t{1} << m);
    struct Node {
        std::uint64_t a, b;
        int depth;
    };
    std::vector<Node> stack;
    stack.push_back({1, 1, 0});
    while (!stack.empty()) {
        Node cur = stack.back();
        stack.pop_back();
        while (cur.depth < m) {
            stack.push_back({cur.a + cur.b, cur.b, cur.depth + 1});  // right, visited later
            cur = {cur.a, cur.a + cur.b, cur.depth + 1};             // left first
        }
        out.push_back({cur.a, cur.b});
    }
}

// Depth-first walk of the pair tree below (a0, b0), leaves at `depth`
// levels down; leaf(a, b) in left-to-right order.
template <class LeafFn>
void walk_pairs(std::uint64_t a0, std::uint64_t b0, int depth, LeafFn&& leaf) {
    struct Node {
        std::uint64_t a, b;
        int rem;
    };
    Node stack[kFoldLevelCap + 1];
    int top = 0;
    stack[top++] = {a0, b0, depth};
    while (top > 0) {
        Node cur = stack[--top];
        while (cur.rem > 0) {
            stack[top++] = {cur.a + cur.b, cur.b, cur.rem - 1};
            cur = {cur.a, cur.a + cur.b, cur.rem - 1};
        }
        leaf(cur.a, cur.b);
    }
}

// Same walk carrying full endpoint fractions: leaf(sl, tl, sr, tr).
template <class LeafFn>
void walk_fractions(std::uint64_t sl0, std::uint64_t tl0, std::uint64_t sr0, std::uint64_t tr0, int depth,
                    LeafFn&& leaf) {
    struct Node {
        std::uint64_t sl, tl, sr, tr;
        int rem;
    };
    Node stack[kFoldLevelCap + 1];
    int top = 0;
    stack[top++] = {sl0, tl0, sr0, tr0, depth};
    while (top > 0) {
        Node cur = stack[--top];
        while (cur.rem > 0) {
            const std::uint64_t sm = cur.sl + cur.sr;
            const std::uint64_t tm = cur.tl + cur.tr;
            stack[top++] = {sm, tm, cur.sr, cur.tr, cur.rem - 1};
            cur = {cur.sl, cur.tl, sm, tm, cur.rem - 1};
        }
        leaf(cur.sl, cur.tl, cur.sr, cur.tr);
    }
}

// Frontier fractions at level m, left to right.
inline void frontier_fractions(int m, std::vector<std::array<std::uint64_t, 4>>& out) {
    out.clear();
    out.reserve(std::size_t{1} << m);
    walk_fractions(0, 1, 1, 1, m, [&](std::uint64_t sl, std::uint64_t tl, std::uint64_t sr, std::uint64_t tr) {
        out.push_back({sl, tl, sr, tr});
    });
}

}  // namespace detail

// Visits the 2^n level-n denominator pairs exactly once, left to right.
// Work is partitioned at the frontier level into independent subtree folds;
// partial accumulators merge in fixed left-to-right order, so the result is
// identical for any worker count. Acc must be default-constructible.
template <class Acc, class LeafFn, class MergeFn>
Acc fold_pairs(int n, const FoldOptions& opt, LeafFn leaf, MergeFn merge) {
    if (n < 0 || n > kFoldLevelCap) throw std::domain_error("fold_pairs: level cap exceeded");
    const int m = std::min(opt.frontier < 0 ? 0 : opt.frontier, n);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> frontier;
    detail::frontier_pairs(m, frontier);
    std::vector<Acc> parts(frontier.size());
    parallel_for_index(frontier.size(), opt.workers, [&](std::size_t i) {
        detail::walk_pairs(frontier[i].first, frontier[i].second, n - m,
                           [&](std::uint64_t a, std::uint64_t b) { leaf(parts[i], a, b); });
    });
    Acc total{};
    for (auto& p : parts) merge(total, std::move(p));
    return total;
}

// As fold_pairs but the leaf sees both endpoint fractions sl/tl, sr/tr.
template <class Acc, class LeafFn, class MergeFn>
Acc fold_intervals(int n, const FoldOptions& opt, LeafFn leaf, MergeFn merge) {
    if (n < 0 || n > kFoldLevelCap) throw std::domain_error("fold_intervals: level cap exceeded");
    const int m = std::min(opt.frontier < 0 ? 0 : opt.frontier, n);
    std::vector<std::array<std::uint64_t, 4>> frontier;
    detail::frontier_fractions(m, frontier);
    std::vector<Acc> parts(frontier.size());
    parallel_for_index(frontier.size(), opt.workers, [&](std::size_t i) {
        const auto& f = frontier[i];
        detail::walk_fractions(f[0], f[1], f[2], f[3], n - m,
                               [&](std::uint64_t sl, std::uint64_t tl, std::uint64_t sr, std::uint64_t tr) {
                                   leaf(parts[i], sl, tl, sr, tr);
                               });
    });
    Acc total{};
    for (auto& p : parts) merge(total, std::move(p));
    return total;
}

}  // namespace qmf
