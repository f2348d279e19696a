#pragma once

// Independent reference implementations used to derive and cross-check expected values.
// They share no code with the library beyond the ColoredQuiver container.

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "qmut/quiver.hpp"

namespace qmut::oracle {

// Sorted (from, to, color, count) list of q under the labeling perm (perm[v] = new label).
inline std::vector<Arrow> relabeled_arrows(const ColoredQuiver& q, const std::vector<Vertex>& perm) {
    std::vector<Arrow> out;
    for (Vertex i = 0; i < q.n(); ++i)
        for (Vertex j = 0; j < q.n(); ++j)
            for (Color c = 0; c <= q.m(); ++c)
                if (int k = q.multiplicity(i, j, c)) out.push_back({perm[i], perm[j], c, k});
    std::sort(out.begin(), out.end());
    return out;
}

// Smallest arrow list over all n! relabelings. Feasible for n <= 7.
inline std::vector<Arrow> exhaustive_key(const ColoredQuiver& q) {
    std::vector<Vertex> perm(q.n());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Arrow> best = relabeled_arrows(q, perm);
    while (std::next_permutation(perm.begin(), perm.end())) {
        auto cand = relabeled_arrows(q, perm);
        if (cand < best) best = std::move(cand);
    }
    return best;
}

// Isomorphism by trying every bijection.
inline bool exhaustive_isomorphic(const ColoredQuiver& a, const ColoredQuiver& b) {
    if (a.m() != b.m() || a.n() != b.n()) return false;
    std::vector<Arrow> target = b.arrows();
    std::vector<Vertex> perm(a.n());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (relabeled_arrows(a, perm) == target) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Colored mutation by its three-step description on a dense copy, written independently
// from the library: compose i -(c)-> j -(0)-> k, cancel the two lowest colors of a pair
// against each other until one color is left, then recolor arrows at j.
inline ColoredQuiver reference_mutate(const ColoredQuiver& q, Vertex j) {
    const int n = q.n(), m = q.m();
    std::vector<std::vector<std::vector<int>>> a(n, std::vector<std::vector<int>>(n, std::vector<int>(m + 1, 0)));
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = 0; y < n; ++y)
            for (Color c = 0; c <= m; ++c) a[x][y][c] = q.multiplicity(x, y, c);
    auto b = a;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex k = 0; k < n; ++k) {
            if (i == j || k == j || i == k) continue;
            for (Color c = 0; c <= m; ++c) {
                int add = a[i][j][c] * a[j][k][0];
                b[i][k][c] += add;
                b[k][i][m - c] += add;
            }
        }
    for (Vertex i = 0; i < n; ++i)
        for (Vertex k = i + 1; k < n; ++k) {
            if (i == j || k == j) continue;
            for (;;) {
                std::vector<Color> present;
                for (Color c = 0; c <= m; ++c)
                    if (b[i][k][c] > 0) present.push_back(c);
                if (present.size() < 2) break;
                int d = std::min(b[i][k][present[0]], b[i][k][present[1]]);
                for (int t = 0; t < 2; ++t) {
                    b[i][k][present[t]] -= d;
                    b[k][i][m - present[t]] -= d;
                }
            }
        }
    ColoredQuiver out(m, n);
    for (Vertex x = 0; x < n; ++x)
        for (Vertex y = 0; y < n; ++y) {
            if (x == y) continue;
            for (Color c = 0; c <= m; ++c) {
                if (!b[x][y][c]) continue;
                Color nc = c;
                if (y == j) nc = (c + 1) % (m + 1);
                else if (x == j) nc = (c + m) % (m + 1);
                out.set_multiplicity(x, y, nc, b[x][y][c]);
            }
        }
    return out;
}

// Breadth-first closure using the reference mutation and exhaustive keys. Returns the
// set of keys, or an empty set when more than `limit` classes appear.
inline std::set<std::vector<Arrow>> class_keys(const ColoredQuiver& seed, std::size_t limit = 5000) {
    std::set<std::vector<Arrow>> keys{exhaustive_key(seed)};
    std::deque<ColoredQuiver> queue{seed};
    while (!queue.empty()) {
        ColoredQuiver cur = queue.front();
        queue.pop_front();
        for (Vertex v = 0; v < cur.n(); ++v) {
            ColoredQuiver next = reference_mutate(cur, v);
            if (keys.insert(exhaustive_key(next)).second) {
                if (keys.size() > limit) return {};
                queue.push_back(std::move(next));
            }
        }
    }
    return keys;
}

// Every vertex sequence of a directed k-cycle, counted once per rotation class, by
// brute force over ordered k-tuples.
inline long long directed_cycles(const Digraph& d, int k) {
    long long count = 0;
    std::vector<Vertex> seq(k);
    std::function<void(int)> rec = [&](int at) {
        if (at == k) {
            for (int t = 0; t < k; ++t)
                if (!d.count[seq[t]][seq[(t + 1) % k]]) return;
            // First vertex is the minimum, so each rotation class appears once.
            for (int t = 1; t < k; ++t)
                if (seq[t] <= seq[0]) return;
            ++count;
            return;
        }
        for (Vertex v = 0; v < d.n; ++v) {
            if (std::find(seq.begin(), seq.begin() + at, v) != seq.begin() + at) continue;
            seq[at] = v;
            rec(at + 1);
        }
    };
    rec(0);
    return count;
}

}  // namespace qmut::oracle
