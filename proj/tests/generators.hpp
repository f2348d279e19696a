#pragma once

// Seeded random generators for property tests.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "qmut/quiver.hpp"

namespace qmut::gen {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::vector<Vertex> permutation(Rng& rng, int n) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

inline ColoredQuiver random_walk(Rng& rng, ColoredQuiver q, int steps) {
    for (int s = 0; s < steps; ++s) q = mutate(q, uniform(rng, 0, q.n() - 1));
    return q;
}

inline ColoredQuiver random_line(Rng& rng, int n, int m) {
    std::vector<Color> colors(n - 1);
    for (auto& c : colors) c = uniform(rng, 0, m);
    return relabel(build_line_quiver(n, m, colors), permutation(rng, n));
}

// Colors c_0..c_{l-1} in [0, m] with sum h*m.
inline std::vector<Color> colors_with_sum(Rng& rng, int l, int m, int h) {
    for (;;) {
        std::vector<Color> c(l);
        int sum = 0;
        for (int i = 0; i + 1 < l; ++i) sum += (c[i] = uniform(rng, 0, m));
        int last = h * m - sum;
        if (last < 0 || last > m) continue;
        c[l - 1] = last;
        return c;
    }
}

// Pure central cycle of length l (l >= 3) or the double pair (l = 2), labeled at random.
inline ColoredQuiver random_central_cycle(Rng& rng, int l, int m, int h) {
    ColoredQuiver q(m, l);
    if (l == 2) {
        q.set_pair(0, 1, uniform(rng, 0, m), 2);
    } else {
        auto c = colors_with_sum(rng, l, m, h);
        for (int i = 0; i < l; ++i) q.set_pair(i, (i + 1) % l, c[i], 1);
    }
    return relabel(q, permutation(rng, l));
}

}  // namespace qmut::gen
