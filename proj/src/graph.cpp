#include "qmut/graph.hpp"

#include <bit>
#include <functional>
#include <stdexcept>

namespace qmut {

std::vector<Vertex> mask_vertices(VertexMask mask) {
    std::vector<Vertex> out;
    while (mask) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

UnderlyingGraph::UnderlyingGraph(const ColoredQuiver& q) : n_(q.n()), adj_(q.n(), 0) {
    if (n_ > 64) throw std::invalid_argument("graph routines support at most 64 vertices");
    for (Vertex i = 0; i < n_; ++i)
        for (Vertex j = 0; j < n_; ++j)
            if (i != j && q.adjacent(i, j)) adj_[i] |= bit(j);
}

UnderlyingGraph::UnderlyingGraph(int n, std::vector<VertexMask> adj) : n_(n), adj_(std::move(adj)) {}

UnderlyingGraph UnderlyingGraph::without_edges(const std::vector<std::pair<Vertex, Vertex>>& removed) const {
    auto adj = adj_;
    for (auto [a, b] : removed) {
        adj[a] &= ~bit(b);
        adj[b] &= ~bit(a);
    }
    return UnderlyingGraph(n_, std::move(adj));
}

std::vector<VertexMask> UnderlyingGraph::components(VertexMask within) const {
    std::vector<VertexMask> out;
    VertexMask left = within;
    while (left) {
        VertexMask comp = left & (~left + 1);
        VertexMask frontier = comp;
        while (frontier) {
            Vertex v = std::countr_zero(frontier);
            frontier &= frontier - 1;
            VertexMask fresh = adj_[v] & within & ~comp;
            comp |= fresh;
            frontier |= fresh;
        }
        out.push_back(comp);
        left &= ~comp;
    }
    return out;
}

bool UnderlyingGraph::connected() const { return n_ <= 1 || components().size() == 1; }

std::vector<std::vector<Vertex>> UnderlyingGraph::holes() const {
    std::vector<std::vector<Vertex>> out;
    std::vector<Vertex> path;
    for (Vertex s = 0; s < n_; ++s) {
        VertexMask above = all() & ~(bit(s + 1) - 1);
        std::function<void(VertexMask)> extend = [&](VertexMask inner) {
            // inner: path vertices other than s and the last one.
            Vertex last = path.back();
            for (Vertex u : mask_vertices(adj_[last] & above)) {
                VertexMask on_path = inner | bit(last);
                if (on_path & bit(u)) continue;
                if (adj_[u] & inner) continue;
                if (adj_[u] & bit(s)) {
                    if (path.size() >= 3 && path[1] < u) {
                        auto cycle = path;
                        cycle.push_back(u);
                        out.push_back(std::move(cycle));
                    }
                    continue;
                }
                path.push_back(u);
                extend(inner | (path.size() > 2 ? bit(last) : 0));
                path.pop_back();
            }
        };
        for (Vertex v1 : mask_vertices(adj_[s] & above)) {
            path = {s, v1};
            extend(0);
        }
    }
    return out;
}

std::vector<std::vector<Vertex>> UnderlyingGraph::triangles() const {
    std::vector<std::vector<Vertex>> out;
    for (Vertex a = 0; a < n_; ++a)
        for (Vertex b : mask_vertices(adj_[a] & ~(bit(a + 1) - 1)))
            for (Vertex c : mask_vertices(adj_[a] & adj_[b] & ~(bit(b + 1) - 1))) out.push_back({a, b, c});
    return out;
}

std::vector<VertexMask> UnderlyingGraph::maximal_cliques_containing(VertexMask base, VertexMask within) const {
    std::vector<VertexMask> out;
    VertexMask candidates = within & ~base;
    for (Vertex v : mask_vertices(base)) candidates &= adj_[v];
    std::function<void(VertexMask, VertexMask, VertexMask)> bk = [&](VertexMask r, VertexMask p, VertexMask x) {
        if (!p && !x) {
            out.push_back(r);
            return;
        }
        VertexMask px = p | x;
        Vertex pivot = std::countr_zero(px);
        for (Vertex v : mask_vertices(p & ~adj_[pivot])) {
            bk(r | bit(v), p & adj_[v], x & adj_[v]);
            p &= ~bit(v);
            x |= bit(v);
        }
    };
    bk(base, candidates, 0);
    return out;
}

bool UnderlyingGraph::is_clique(VertexMask set) const {
    for (Vertex v : mask_vertices(set))
        if (((adj_[v] | bit(v)) & set) != set) return false;
    return true;
}

bool UnderlyingGraph::is_path(VertexMask within) const {
    auto vs = mask_vertices(within);
    if (vs.empty()) return false;
    if (components(within).size() != 1) return false;
    int edges = 0, ends = 0;
    for (Vertex v : vs) {
        int d = std::popcount(adj_[v] & within);
        if (d > 2) return false;
        if (d <= 1) ++ends;
        edges += d;
    }
    return edges / 2 == static_cast<int>(vs.size()) - 1 && (vs.size() == 1 || ends == 2);
}

}  // namespace qmut
