#include "qmut/consequences.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "qmut/graph.hpp"

namespace qmut {

namespace {

// Directed simple cycles of length k starting at their smallest vertex, restricted to
// `allowed`, as vertex sequences (parallel arrows do not multiply cycles).
void for_each_oriented_cycle(const Digraph& d, int k, const std::vector<bool>& allowed,
                             const std::function<void(const std::vector<Vertex>&)>& visit) {
    if (k < 1) return;
    std::vector<Vertex> path;
    std::vector<bool> on_path(d.n, false);
    std::function<void()> extend = [&] {
        Vertex start = path.front(), last = path.back();
        if (static_cast<int>(path.size()) == k) {
            if (d.count[last][start]) visit(path);
            return;
        }
        for (Vertex next = start + 1; next < d.n; ++next) {
            if (!allowed[next] || on_path[next]) continue;
            if (!d.count[last][next]) continue;
            path.push_back(next);
            on_path[next] = true;
            extend();
            on_path[next] = false;
            path.pop_back();
        }
    };
    for (Vertex s = 0; s < d.n; ++s) {
        if (!allowed[s]) continue;
        if (k == 1) {
            if (d.count[s][s]) visit({s});
            continue;
        }
        path = {s};
        on_path[s] = true;
        extend();
        on_path[s] = false;
    }
}

struct Edge {
    Vertex from;
    Vertex to;
};

// Simple cycles of the underlying multigraph (parallel arrows are distinct edges), each
// reported once as (vertex sequence, edge ids in traversal order).
std::vector<std::pair<std::vector<Vertex>, std::vector<int>>> simple_cycles(int n, const std::vector<Edge>& edges) {
    std::vector<std::vector<std::pair<Vertex, int>>> incident(n);
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
        incident[edges[e].from].emplace_back(edges[e].to, e);
        incident[edges[e].to].emplace_back(edges[e].from, e);
    }
    std::vector<std::pair<std::vector<Vertex>, std::vector<int>>> out;
    std::set<std::vector<int>> seen;
    std::vector<Vertex> path;
    std::vector<int> used;
    std::vector<bool> on_path(n, false);
    std::function<void()> extend = [&] {
        Vertex start = path.front(), last = path.back();
        for (auto [next, e] : incident[last]) {
            if (!used.empty() && e == used.back()) continue;
            if (next == start && !used.empty()) {
                std::vector<int> key = used;
                key.push_back(e);
                std::sort(key.begin(), key.end());
                if (seen.insert(key).second) {
                    std::vector<int> ids = used;
                    ids.push_back(e);
                    out.emplace_back(path, ids);
                }
                continue;
            }
            if (next < start || on_path[next]) continue;
            path.push_back(next);
            used.push_back(e);
            on_path[next] = true;
            extend();
            on_path[next] = false;
            used.pop_back();
            path.pop_back();
        }
    };
    for (Vertex s = 0; s < n; ++s) {
        path = {s};
        on_path[s] = true;
        extend();
        on_path[s] = false;
    }
    return out;
}

bool has_arrow(const Digraph& d, Vertex a, Vertex b) { return d.count[a][b] > 0; }

}  // namespace

long long count_oriented_cycles(const Digraph& d, int k) {
    long long total = 0;
    for_each_oriented_cycle(d, k, std::vector<bool>(d.n, true),
                            [&](const std::vector<Vertex>&) { ++total; });
    return total;
}

bool BastianParameters::holds() const {
    if (recovered_p() != p || recovered_q() != q) return false;
    return std::all_of(components.begin(), components.end(),
                       [](const PeripheralCount& c) { return c.consistent(); });
}

BastianParameters bastian_parameters(const ColoredQuiver& q, const ClassCertificate& cert) {
    if (q.m() != 1) throw std::invalid_argument("recovery formulas need m = 1");
    const int m = q.m();
    const Digraph d = zero_colored_part(q);
    const CentralCycle& cyc = cert.cycle;
    BastianParameters out;
    out.p = cert.p;
    out.q = cert.q;

    for (int i = 0; i < cyc.l; ++i) {
        Vertex a = cyc.vertices[i], b = cyc.vertices[(i + 1) % cyc.l];
        const bool ccw = cyc.colors[i] == 0;
        if (!ccw && cyc.colors[i] != m) continue;
        // The arrow of the 0-colored part carried by this central arrow.
        Vertex from = ccw ? a : b, to = ccw ? b : a;
        int oriented = 0;
        for (const Peripheral& per : cert.peripherals) {
            if (per.boundary_index != i) continue;
            if (has_arrow(d, to, per.w) && has_arrow(d, per.w, from)) ++oriented;
        }
        int& r1 = ccw ? out.r1p : out.s1p;
        int& r2 = ccw ? out.r2p : out.s2p;
        if (oriented == 0) ++r1;
        r2 += oriented;
    }

    for (const Peripheral& per : cert.peripherals) {
        std::vector<bool> inside(q.n(), false);
        for (Vertex v : per.component) inside[v] = true;
        std::set<std::pair<Vertex, Vertex>> covered;
        int triangles = 0;
        for_each_oriented_cycle(d, 3, inside, [&](const std::vector<Vertex>& c) {
            ++triangles;
            for (int t = 0; t < 3; ++t) covered.emplace(c[t], c[(t + 1) % 3]);
        });
        int outside = 0;
        for (Vertex x : per.component)
            for (Vertex y : per.component)
                if (d.count[x][y] && !covered.count({x, y})) outside += d.count[x][y];
        PeripheralCount pc{per.w, per.tag, per.n_w, outside, triangles};
        out.components.push_back(pc);
        if (per.tag == Tag::Wp) {
            out.r1pp += outside;
            out.r2pp += triangles;
        } else {
            out.s1pp += outside;
            out.s2pp += triangles;
        }
    }
    return out;
}

bool verify_bastian(const ColoredQuiver& q) {
    if (q.m() != 1) throw std::invalid_argument("recovery formulas need m = 1");
    ClassVerdict v = check_Qmpq(q);
    if (!v.member) throw std::invalid_argument("not a class member: condition " + v.failed + " failed");
    if (bastian_parameters(q, *v.certificate).holds()) return true;
    ClassVerdict r = check_Qmpq(q, std::make_pair(v.certificate->q, v.certificate->p));
    if (!r.member) return false;
    BastianParameters reflected = bastian_parameters(q, *r.certificate);
    reflected.reflected = true;
    return reflected.holds();
}

bool ZeroPartReport::passes() const {
    return std::all_of(components.begin(), components.end(),
                       [](const ZeroPartComponent& c) { return c.passes(); });
}

ZeroPartReport check_zero_part_corollary(const ColoredQuiver& q) {
    const int m = q.m(), n = q.n();
    const int k = m + 2;
    ZeroPartReport report;
    report.m = m;
    const Digraph d = zero_colored_part(q);

    std::optional<CentralCycle> central;
    ClassVerdict verdict = check_Qmpq(q);
    report.member = verdict.member;
    if (verdict.member) {
        central = verdict.certificate->cycle;
    } else {
        try {
            central = detect_central_cycle(q);
        } catch (const AmbiguousCentralCycle&) {
        }
    }

    std::vector<VertexMask> adj(n, 0);
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j)
            if (i != j && (d.count[i][j] || d.count[j][i])) adj[i] |= bit(j);
    UnderlyingGraph g(n, adj);

    for (VertexMask comp : g.components()) {
        ZeroPartComponent c;
        c.vertices = mask_vertices(comp);
        std::vector<bool> inside(n, false);
        for (Vertex v : c.vertices) inside[v] = true;

        std::vector<Edge> edges;
        std::vector<int> local(n, -1);
        for (int t = 0; t < static_cast<int>(c.vertices.size()); ++t) local[c.vertices[t]] = t;
        c.b = true;
        c.a = true;
        for (Vertex x : c.vertices) {
            if (d.count[x][x]) c.b = false;
            if (d.out_degree(x) > 2 || d.in_degree(x) > 2) c.a = false;
            for (Vertex y : c.vertices)
                for (int t = 0; t < d.count[x][y]; ++t) edges.push_back({local[x], local[y]});
        }
        c.arrows = static_cast<int>(edges.size());
        c.chi = c.arrows - static_cast<int>(c.vertices.size()) + 1;

        for_each_oriented_cycle(d, k, inside, [&](const std::vector<Vertex>& cyc) {
            c.oriented_cycles.push_back(cyc);
        });

        // A cycle is oriented when every edge is traversed along its arrow.
        auto oriented_of_length_k = [&](const std::vector<Vertex>& vs, const std::vector<int>& ids) {
            if (static_cast<int>(ids.size()) != k) return false;
            bool forward = true, backward = true;
            for (std::size_t t = 0; t < ids.size(); ++t) {
                Vertex x = vs[t], y = vs[(t + 1) % vs.size()];
                const Edge& e = edges[ids[t]];
                forward = forward && e.from == x && e.to == y;
                backward = backward && e.from == y && e.to == x;
            }
            return forward || backward;
        };
        std::set<std::vector<Vertex>> listed;
        bool other_cycles_central = true;
        for (auto& [vs, ids] : simple_cycles(static_cast<int>(c.vertices.size()), edges)) {
            std::vector<Vertex> global;
            for (Vertex v : vs) global.push_back(c.vertices[v]);
            if (!oriented_of_length_k(vs, ids)) {
                c.has_delta = true;
                if (!central || std::none_of(global.begin(), global.end(),
                                             [&](Vertex v) { return central->contains(v); }))
                    other_cycles_central = false;
            }
            if (listed.insert(global).second) c.cycles.push_back(std::move(global));
        }

        if (central && inside[central->vertices.front()])
            c.central_survives = std::all_of(central->colors.begin(), central->colors.end(),
                                             [&](Color col) { return col == 0 || col == m; });
        const int oriented = static_cast<int>(c.oriented_cycles.size());
        c.c = other_cycles_central;
        c.d = !c.has_delta || oriented == c.chi - 1;
        c.e = c.has_delta || oriented == c.chi;
        report.components.push_back(std::move(c));
    }
    return report;
}

}  // namespace qmut
