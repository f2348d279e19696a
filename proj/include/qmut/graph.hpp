#pragma once

#include <cstdint>
#include <vector>

#include "qmut/quiver.hpp"

namespace qmut {

using VertexMask = std::uint64_t;

inline VertexMask bit(Vertex v) { return VertexMask{1} << v; }

std::vector<Vertex> mask_vertices(VertexMask mask);

// Underlying simple undirected graph of a quiver (at most 64 vertices).
class UnderlyingGraph {
public:
    explicit UnderlyingGraph(const ColoredQuiver& q);
    UnderlyingGraph(int n, std::vector<VertexMask> adj);

    int n() const { return n_; }
    VertexMask neighbors(Vertex v) const { return adj_[v]; }
    bool adjacent(Vertex a, Vertex b) const { return (adj_[a] >> b) & 1U; }
    VertexMask all() const { return n_ == 64 ? ~VertexMask{0} : (bit(n_) - 1); }

    // Graph with every edge inside `removed` pairs deleted.
    UnderlyingGraph without_edges(const std::vector<std::pair<Vertex, Vertex>>& removed) const;

    std::vector<VertexMask> components(VertexMask within) const;
    std::vector<VertexMask> components() const { return components(all()); }
    bool connected() const;

    // Chordless cycles of length >= 4, each listed once in traversal order starting at
    // its smallest vertex.
    std::vector<std::vector<Vertex>> holes() const;
    // Triangles {a < b < c}.
    std::vector<std::vector<Vertex>> triangles() const;
    // Maximal cliques containing every vertex of `base`, drawn from `within`.
    std::vector<VertexMask> maximal_cliques_containing(VertexMask base, VertexMask within) const;
    std::vector<VertexMask> maximal_cliques(VertexMask within) const {
        return maximal_cliques_containing(0, within);
    }
    bool is_clique(VertexMask set) const;
    // True when `within` induces a simple path (or a single vertex).
    bool is_path(VertexMask within) const;

private:
    int n_ = 0;
    std::vector<VertexMask> adj_;
};

inline UnderlyingGraph underlying_graph(const ColoredQuiver& q) { return UnderlyingGraph(q); }
inline std::vector<std::vector<Vertex>> find_holes(const ColoredQuiver& q) { return UnderlyingGraph(q).holes(); }

}  // namespace qmut
