#include "qmut/isomorphism.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

namespace qmut {

namespace {

using Cells = std::vector<int>;

int cell_count(const Cells& cells) { return cells.empty() ? 0 : *std::max_element(cells.begin(), cells.end()) + 1; }

// Equitable refinement: split cells by the multiset of (neighbor cell, color, count)
// over outgoing arrows until stable. Cell ranks respect the previous order.
Cells refine(const ColoredQuiver& q, Cells cells) {
    const int n = q.n(), m = q.m();
    int count = static_cast<int>(std::set<int>(cells.begin(), cells.end()).size());
    while (true) {
        std::vector<std::vector<int>> sig(n);
        for (Vertex v = 0; v < n; ++v) {
            std::vector<std::array<int, 3>> entries;
            for (Vertex u = 0; u < n; ++u)
                for (Color c = 0; c <= m; ++c)
                    if (int k = q.raw(v, u, c)) entries.push_back({cells[u], c, k});
            std::sort(entries.begin(), entries.end());
            sig[v].push_back(cells[v]);
            for (const auto& e : entries) sig[v].insert(sig[v].end(), e.begin(), e.end());
        }
        std::map<std::vector<int>, int> rank;
        for (const auto& s : sig) rank.emplace(s, 0);
        int r = 0;
        for (auto& [key, value] : rank) value = r++;
        Cells next(n);
        for (Vertex v = 0; v < n; ++v) next[v] = rank[sig[v]];
        int next_count = static_cast<int>(rank.size());
        cells = std::move(next);
        if (next_count == count) return cells;
        count = next_count;
    }
}

std::vector<Arrow> relabeled_arrows(const std::vector<Arrow>& arrows, const std::vector<Vertex>& perm) {
    std::vector<Arrow> out;
    out.reserve(arrows.size());
    for (const Arrow& a : arrows) out.push_back({perm[a.from], perm[a.to], a.color, a.count});
    std::sort(out.begin(), out.end());
    return out;
}

struct Search {
    const ColoredQuiver& q;
    std::vector<Arrow> arrows;
    std::vector<Arrow> best;
    std::vector<Vertex> best_perm;
    bool have = false;

    void run(const Cells& start) {
        Cells cells = refine(q, start);
        const int n = q.n();
        if (cell_count(cells) == n) {
            auto candidate = relabeled_arrows(arrows, cells);
            if (!have || candidate < best) {
                best = std::move(candidate);
                best_perm = cells;
                have = true;
            }
            return;
        }
        std::vector<int> size(n, 0);
        for (int c : cells) ++size[c];
        int target = 0;
        while (size[target] < 2) ++target;
        for (Vertex v = 0; v < n; ++v) {
            if (cells[v] != target) continue;
            Cells split(n);
            for (Vertex u = 0; u < n; ++u) split[u] = 2 * cells[u] + (cells[u] == target && u != v ? 1 : 0);
            run(split);
        }
    }
};

const char* kHex = "0123456789abcdef";

void put_byte(std::string& out, int value) {
    if (value < 0 || value > 255) throw std::out_of_range("digest field exceeds one byte");
    out.push_back(kHex[value >> 4]);
    out.push_back(kHex[value & 15]);
}

}  // namespace

std::vector<Vertex> canonical_labeling(const ColoredQuiver& q) {
    if (q.n() == 0) return {};
    Search s{q, q.arrows(), {}, {}, false};
    s.run(Cells(q.n(), 0));
    return s.best_perm;
}

std::string encode_digest(int m, int n, const std::vector<Arrow>& arrows) {
    std::string out;
    out.reserve(4 + arrows.size() * 8);
    put_byte(out, m);
    put_byte(out, n);
    for (const Arrow& a : arrows) {
        put_byte(out, a.from);
        put_byte(out, a.to);
        put_byte(out, a.color);
        put_byte(out, a.count);
    }
    return out;
}

CanonicalForm canonical_form(const ColoredQuiver& q) {
    CanonicalForm f;
    f.m = q.m();
    f.n = q.n();
    f.arrows = relabeled_arrows(q.arrows(), canonical_labeling(q));
    f.digest = encode_digest(f.m, f.n, f.arrows);
    return f;
}

ColoredQuiver canonical_quiver(const ColoredQuiver& q) { return relabel(q, canonical_labeling(q)); }

bool are_isomorphic(const ColoredQuiver& a, const ColoredQuiver& b) {
    if (a.m() != b.m() || a.n() != b.n()) return false;
    return canonical_form(a) == canonical_form(b);
}

std::optional<std::vector<Vertex>> find_isomorphism(const ColoredQuiver& a, const ColoredQuiver& b) {
    if (a.m() != b.m() || a.n() != b.n()) return std::nullopt;
    auto pa = canonical_labeling(a);
    auto pb = canonical_labeling(b);
    if (relabeled_arrows(a.arrows(), pa) != relabeled_arrows(b.arrows(), pb)) return std::nullopt;
    // a --pa--> canonical <--pb-- b
    std::vector<Vertex> inv_b(b.n());
    for (Vertex v = 0; v < b.n(); ++v) inv_b[pb[v]] = v;
    std::vector<Vertex> perm(a.n());
    for (Vertex v = 0; v < a.n(); ++v) perm[v] = inv_b[pa[v]];
    return perm;
}

std::string positional_digest(const ColoredQuiver& q) { return encode_digest(q.m(), q.n(), q.arrows()); }

}  // namespace qmut
