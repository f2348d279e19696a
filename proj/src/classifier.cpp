#include "qmut/classifier.hpp"

#include <algorithm>
#include <bit>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "qmut/graph.hpp"

namespace qmut {

std::string to_string(Tag tag) { return tag == Tag::Wp ? "Wp" : "Wq"; }

int triangle_color_sum(const ColoredQuiver& q, Vertex x, Vertex y, Vertex z) {
    return q.color_of(x, y) + q.color_of(y, z) + q.color_of(z, x);
}

bool is_m_admissible_triangle(const ColoredQuiver& q, Vertex x, Vertex y, Vertex z) {
    int s = triangle_color_sum(q, x, y, z);
    return s == q.m() - 1 || s == 2 * q.m() + 1;
}

TriangleBranch triangle_color_relation(const ColoredQuiver& q, Vertex v, Vertex v1, Vertex v2) {
    int c1 = q.color_of(v, v1), c2 = q.color_of(v, v2), c12 = q.color_of(v1, v2);
    if (c1 < c2 && c12 == c2 - c1 - 1) return TriangleBranch::LowFirst;
    if (c2 < c1 && c12 == c2 - c1 + q.m() + 1) return TriangleBranch::LowSecond;
    return TriangleBranch::Neither;
}

bool CentralCycle::contains(Vertex v) const { return position(v) >= 0; }

int CentralCycle::position(Vertex v) const {
    auto it = std::find(vertices.begin(), vertices.end(), v);
    return it == vertices.end() ? -1 : static_cast<int>(it - vertices.begin());
}

CentralCycle CentralCycle::reversed(int m) const {
    CentralCycle r;
    r.l = l;
    r.h = l - h;
    r.vertices.push_back(vertices[0]);
    for (int i = l - 1; i >= 1; --i) r.vertices.push_back(vertices[i]);
    // New arrow i runs r.vertices[i] -> r.vertices[i+1], the reverse of an old arrow.
    for (int i = 0; i < l; ++i) {
        int old = (l - 1 - i + l) % l;  // old arrow vertices[old] -> vertices[old+1]
        r.colors.push_back(m - colors[old]);
    }
    return r;
}

namespace {

CentralCycle make_cycle(const ColoredQuiver& q, std::vector<Vertex> vs) {
    CentralCycle c;
    c.l = static_cast<int>(vs.size());
    c.vertices = std::move(vs);
    int sum = 0;
    for (int i = 0; i < c.l; ++i) {
        Color col = q.color_of(c.vertices[i], c.vertices[(i + 1) % c.l]);
        c.colors.push_back(col);
        sum += col;
    }
    c.h = sum / q.m();
    return c;
}

}  // namespace

std::vector<CentralCycle> central_cycle_candidates(const ColoredQuiver& q) {
    std::vector<CentralCycle> out;
    const int m = q.m();
    for (Vertex a = 0; a < q.n(); ++a)
        for (Vertex b = a + 1; b < q.n(); ++b)
            for (Color c = 0; c <= m; ++c)
                if (q.multiplicity(a, b, c) == 2) {
                    CentralCycle cyc;
                    cyc.l = 2;
                    cyc.h = 1;
                    cyc.vertices = {a, b};
                    cyc.colors = {c, m - c};
                    out.push_back(cyc);
                }
    UnderlyingGraph g(q);
    for (const auto& t : g.triangles()) {
        int s = triangle_color_sum(q, t[0], t[1], t[2]);
        if (s == m || s == 2 * m) out.push_back(make_cycle(q, t));
    }
    for (const auto& hole : g.holes()) {
        int s = 0;
        for (std::size_t i = 0; i < hole.size(); ++i) s += q.color_of(hole[i], hole[(i + 1) % hole.size()]);
        int l = static_cast<int>(hole.size());
        if (s % m == 0 && s / m > 0 && s / m < l) out.push_back(make_cycle(q, hole));
    }
    return out;
}

std::optional<CentralCycle> detect_central_cycle(const ColoredQuiver& q) {
    auto c = central_cycle_candidates(q);
    if (c.empty()) return std::nullopt;
    if (c.size() > 1) throw AmbiguousCentralCycle(fmt::format("{} central cycle candidates", c.size()));
    return c.front();
}

std::optional<CliqueSplit> vertex_clique_split(const ColoredQuiver& q, Vertex v, const CentralCycle* central) {
    UnderlyingGraph g(q);
    const int m = q.m();
    auto nbrs = mask_vertices(g.neighbors(v));
    if (nbrs.empty()) throw std::invalid_argument(fmt::format("vertex {} has no neighbors", v));

    std::optional<Vertex> partner;
    std::optional<std::pair<Vertex, Vertex>> crossing;
    if (central && central->contains(v)) {
        if (central->l == 2) {
            partner = central->vertices[0] == v ? central->vertices[1] : central->vertices[0];
        } else if (central->l == 3) {
            std::vector<Vertex> rest;
            for (Vertex a : central->vertices)
                if (a != v) rest.push_back(a);
            crossing = std::make_pair(rest[0], rest[1]);
        }
    }
    std::vector<Vertex> others;
    for (Vertex u : nbrs)
        if (!partner || u != *partner) others.push_back(u);
    const int k = static_cast<int>(others.size());
    if (k > 24) return std::nullopt;

    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << k); ++mask) {
        VertexMask s1 = 0, s2 = 0;
        for (int t = 0; t < k; ++t) (mask >> t & 1U ? s1 : s2) |= bit(others[t]);
        VertexMask shared = bit(v) | (partner ? bit(*partner) : 0);
        VertexMask c1 = s1 | shared, c2 = s2 | shared;
        if (std::popcount(c1) > m + 2 || std::popcount(c2) > m + 2) continue;
        if (!g.is_clique(c1) || !g.is_clique(c2)) continue;
        bool ok = true;
        for (Vertex x : mask_vertices(s1)) {
            for (Vertex y : mask_vertices(g.neighbors(x) & s2)) {
                bool allowed = crossing && ((x == crossing->first && y == crossing->second) ||
                                            (x == crossing->second && y == crossing->first));
                if (!allowed) ok = false;
            }
        }
        if (!ok) continue;
        CliqueSplit split;
        split.v = v;
        split.first = mask_vertices(c1);
        split.second = mask_vertices(c2);
        split.z = static_cast<int>(nbrs.size());
        split.shares_partner = partner.has_value();
        return split;
    }
    return std::nullopt;
}

std::optional<std::vector<Vertex>> find_almost_extremal_clique(const ColoredQuiver& q,
                                                               const std::vector<Vertex>& scope) {
    UnderlyingGraph g(q);
    VertexMask within = 0;
    for (Vertex v : scope) within |= bit(v);
    auto cliques = g.maximal_cliques(within);
    std::vector<std::vector<Vertex>> big;
    for (VertexMask c : cliques)
        if (std::popcount(c) >= 3) big.push_back(mask_vertices(c));
    std::sort(big.begin(), big.end());
    for (const auto& c : big) {
        std::vector<std::pair<Vertex, Vertex>> edges;
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b) edges.emplace_back(c[a], c[b]);
        UnderlyingGraph rest = g.without_edges(edges);
        for (VertexMask comp : rest.components(within))
            if (rest.is_path(comp)) return c;
    }
    return std::nullopt;
}

Verdict check_Qmn(const ColoredQuiver& q) {
    if (q.n() == 0) return {false, "connected", "empty quiver"};
    if (!is_valid(q)) return {false, "valid", validate(q).front().message};
    UnderlyingGraph g(q);
    if (!g.connected()) return {false, "connected", "underlying graph is disconnected"};
    for (Vertex i = 0; i < q.n(); ++i)
        for (Vertex j = 0; j < q.n(); ++j)
            if (q.count(i, j) > 1) return {false, "simple", fmt::format("multiple arrows {} -> {}", i, j)};
    auto holes = g.holes();
    if (!holes.empty()) return {false, "holes", fmt::format("chordless cycle {}", fmt::join(holes.front(), " "))};
    for (Vertex v = 0; v < q.n(); ++v) {
        if (g.neighbors(v) == 0) continue;
        if (!vertex_clique_split(q, v)) return {false, "clique_split", fmt::format("no clique split at vertex {}", v)};
    }
    for (const auto& t : g.triangles())
        if (!is_m_admissible_triangle(q, t[0], t[1], t[2]))
            return {false, "triangles", fmt::format("triangle {} {} {} is not admissible", t[0], t[1], t[2])};
    return {true, "", ""};
}

const Peripheral* ClassCertificate::peripheral(Vertex w) const {
    for (const auto& p : peripherals)
        if (p.w == w) return &p;
    return nullptr;
}

namespace {

ClassVerdict fail(std::string cond, std::string detail) {
    ClassVerdict v;
    v.member = false;
    v.failed = std::move(cond);
    v.detail = std::move(detail);
    return v;
}

// Certificate for one orientation: `cycle` in traversal order, `cliques[i]` attached to
// the arrow cycle.vertices[i] -> cycle.vertices[i+1].
ClassCertificate assemble(const ColoredQuiver& q, const CentralCycle& cycle,
                          const std::vector<std::vector<Vertex>>& cliques,
                          const std::vector<std::vector<Vertex>>& components) {
    ClassCertificate cert;
    cert.m = q.m();
    cert.cycle = cycle;
    cert.boundary_cliques = cliques;
    const int l = cycle.l;
    for (int i = 0; i < l; ++i) {
        Vertex a = cycle.vertices[i], b = cycle.vertices[(i + 1) % l];
        for (Vertex w : cliques[i]) {
            if (cycle.contains(w)) continue;
            Peripheral p;
            p.w = w;
            p.boundary_index = i;
            p.triangle = {a, b, w};
            p.triangle_color = cycle.colors[i] + q.color_of(b, w) + q.color_of(w, a);
            p.tag = p.triangle_color == q.m() - 1 ? Tag::Wp : Tag::Wq;
            for (const auto& comp : components)
                if (std::find(comp.begin(), comp.end(), w) != comp.end()) p.component = comp;
            p.n_w = static_cast<int>(p.component.size());
            (p.tag == Tag::Wp ? cert.x_p : cert.x_q) += p.n_w;
            cert.peripherals.push_back(std::move(p));
        }
    }
    std::sort(cert.peripherals.begin(), cert.peripherals.end(),
              [](const Peripheral& x, const Peripheral& y) { return x.w < y.w; });
    cert.p = l - cycle.h + cert.x_p;
    cert.q = cycle.h + cert.x_q;
    return cert;
}

}  // namespace

ClassVerdict check_Qmpq(const ColoredQuiver& q, std::optional<std::pair<int, int>> target) {
    const int m = q.m(), n = q.n();
    if (n < 2) return fail("connected", "fewer than two vertices");
    if (auto vs = validate(q); !vs.empty()) return fail("valid", vs.front().message);
    if (n > 64) return fail("valid", "more than 64 vertices");
    UnderlyingGraph g(q);
    if (!g.connected()) return fail("connected", "underlying graph is disconnected");

    // (a) unique central cycle
    auto candidates = central_cycle_candidates(q);
    if (candidates.empty()) return fail("a", "no central cycle");
    if (candidates.size() > 1) return fail("a", fmt::format("{} central cycle candidates", candidates.size()));
    const CentralCycle cycle = candidates.front();
    const int l = cycle.l;
    VertexMask central = 0;
    for (Vertex a : cycle.vertices) central |= bit(a);

    // (b) simple apart from the double pair of a length-2 cycle
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j) {
            if (i == j) continue;
            bool double_pair = l == 2 && (bit(i) | bit(j)) == central;
            int c = q.count(i, j);
            if (double_pair ? c != 2 : c > 1)
                return fail("b", fmt::format("{} arrows {} -> {}", c, i, j));
        }

    // (c) holes
    auto holes = g.holes();
    if (l <= 3 && !holes.empty())
        return fail("c", fmt::format("chordless cycle {}", fmt::join(holes.front(), " ")));
    if (l >= 4) {
        for (const auto& hole : holes) {
            VertexMask hm = 0;
            for (Vertex v : hole) hm |= bit(v);
            if (hm != central) return fail("c", fmt::format("chordless cycle {} besides the central one", fmt::join(hole, " ")));
        }
    }

    // (d) clique splits
    for (Vertex v = 0; v < n; ++v) {
        if (!vertex_clique_split(q, v, &cycle)) return fail("d", fmt::format("no clique split at vertex {}", v));
    }

    // (e) boundary cliques
    std::vector<std::vector<Vertex>> cliques(l);
    std::vector<std::vector<Vertex>> alt_cliques;  // second assignment for l = 2
    if (l >= 3) {
        for (int i = 0; i < l; ++i) {
            Vertex a = cycle.vertices[i], b = cycle.vertices[(i + 1) % l];
            VertexMask base = bit(a) | bit(b);
            VertexMask within = (g.all() & ~central) | base;
            auto found = g.maximal_cliques_containing(base, within);
            if (found.size() != 1)
                return fail("e", fmt::format("{} maximal cliques contain the central arrow {} {}", found.size(), a, b));
            if (std::popcount(found.front()) > m + 2)
                return fail("e", fmt::format("clique at central arrow {} {} has {} vertices", a, b,
                                             std::popcount(found.front())));
            cliques[i] = mask_vertices(found.front());
        }
    } else {
        VertexMask base = central;
        auto found = g.maximal_cliques_containing(base, g.all());
        std::vector<VertexMask> nontrivial;
        for (VertexMask c : found)
            if (c != base) nontrivial.push_back(c);
        if (nontrivial.size() > 2) return fail("e", fmt::format("{} cliques contain the double arrow", nontrivial.size()));
        for (VertexMask c : nontrivial)
            if (std::popcount(c) > m + 2)
                return fail("e", fmt::format("clique at the double arrow has {} vertices", std::popcount(c)));
        std::sort(nontrivial.begin(), nontrivial.end(),
                  [&](VertexMask x, VertexMask y) { return std::countr_zero(x & ~base) < std::countr_zero(y & ~base); });
        while (nontrivial.size() < 2) nontrivial.push_back(base);
        cliques = {mask_vertices(nontrivial[0]), mask_vertices(nontrivial[1])};
        alt_cliques = {cliques[1], cliques[0]};
    }
    std::vector<int> owner(n, -1);
    for (int i = 0; i < l; ++i)
        for (Vertex w : cliques[i]) {
            if (bit(w) & central) continue;
            if (owner[w] >= 0) return fail("e", fmt::format("vertex {} lies in two boundary cliques", w));
            owner[w] = i;
        }

    // (f) triangles
    for (const auto& t : g.triangles()) {
        VertexMask tm = bit(t[0]) | bit(t[1]) | bit(t[2]);
        if (l == 3 && tm == central) continue;
        if (!is_m_admissible_triangle(q, t[0], t[1], t[2]))
            return fail("f", fmt::format("triangle {} {} {} is not admissible", t[0], t[1], t[2]));
    }

    // (g) components hanging off the peripheral vertices
    std::vector<std::pair<Vertex, Vertex>> removed;
    for (const auto& c : cliques)
        for (std::size_t a = 0; a < c.size(); ++a)
            for (std::size_t b = a + 1; b < c.size(); ++b) removed.emplace_back(c[a], c[b]);
    for (int i = 0; i < l; ++i) removed.emplace_back(cycle.vertices[i], cycle.vertices[(i + 1) % l]);
    UnderlyingGraph rest = g.without_edges(removed);
    std::vector<std::vector<Vertex>> components;
    for (VertexMask comp : rest.components()) {
        auto vs = mask_vertices(comp);
        if (comp & central) {
            if (vs.size() > 1)
                return fail("g", fmt::format("central vertex {} keeps arrows outside the cycle and cliques",
                                             std::countr_zero(comp & central)));
            continue;
        }
        int peripherals = 0;
        for (Vertex v : vs) peripherals += owner[v] >= 0;
        if (peripherals != 1)
            return fail("g", fmt::format("component {{{}}} holds {} peripheral vertices", fmt::join(vs, " "), peripherals));
        Verdict sub = check_Qmn(induced_subquiver(q, vs));
        if (!sub.member)
            return fail("g", fmt::format("component {{{}}} is not of line type: {}", fmt::join(vs, " "), sub.detail));
        components.push_back(vs);
    }

    // Orientations: default and reversed traversal (l >= 3) or swapped clique assignment (l = 2).
    std::vector<ClassCertificate> variants;
    variants.push_back(assemble(q, cycle, cliques, components));
    if (l >= 3) {
        CentralCycle rev = cycle.reversed(m);
        std::vector<std::vector<Vertex>> rev_cliques(l);
        for (int i = 0; i < l; ++i) {
            // reversed arrow i joins rev.vertices[i], rev.vertices[i+1] = old arrow (l-1-i)
            rev_cliques[i] = cliques[(l - 1 - i + l) % l];
        }
        variants.push_back(assemble(q, rev, rev_cliques, components));
    } else {
        variants.push_back(assemble(q, cycle, alt_cliques, components));
    }

    ClassVerdict verdict;
    if (target) {
        for (const auto& v : variants)
            if (v.p == target->first && v.q == target->second) {
                verdict.member = true;
                verdict.certificate = v;
                return verdict;
            }
        return fail("target", fmt::format("quiver belongs to the class of ({}, {}), not ({}, {})", variants[0].p,
                                          variants[0].q, target->first, target->second));
    }
    verdict.member = true;
    verdict.certificate = variants.front();
    return verdict;
}

}  // namespace qmut
