#include "qmut/normalizer.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <unordered_map>

#include "qmut/graph.hpp"
#include "qmut/isomorphism.hpp"

namespace qmut {

namespace {

// Mutation recorder.
struct Walk {
    ColoredQuiver q;
    std::vector<Vertex> seq;

    void mu(Vertex v, int times = 1) {
        times = mod_color(times, q.m());
        for (int t = 0; t < times; ++t) {
            q = mutate(q, v);
            seq.push_back(v);
        }
    }
};

// Smallest color leaving v toward the listed vertices, with its target.
std::pair<Color, Vertex> min_out(const ColoredQuiver& q, Vertex v, const std::vector<Vertex>& among) {
    Color best = q.m() + 1;
    Vertex target = -1;
    for (Vertex u : among) {
        if (u == v) continue;
        Color c = q.color_of(v, u);
        if (c < best) {
            best = c;
            target = u;
        }
    }
    return {best, target};
}

VertexMask to_mask(const std::vector<Vertex>& vs) {
    VertexMask m = 0;
    for (Vertex v : vs) m |= bit(v);
    return m;
}

int edges_within(const UnderlyingGraph& g, VertexMask within) {
    int e = 0;
    for (Vertex v : mask_vertices(within)) e += std::popcount(g.neighbors(v) & within);
    return e / 2;
}

bool rooted_line(const ColoredQuiver& q, VertexMask comp, Vertex w) {
    UnderlyingGraph g(q);
    if (!g.is_path(comp)) return false;
    return std::popcount(comp) == 1 || std::popcount(g.neighbors(w) & comp) == 1;
}

// Line order w = k_0, k_1, ..., k_r of a rooted line.
std::vector<Vertex> chain_from(const ColoredQuiver& q, VertexMask comp, Vertex w) {
    UnderlyingGraph g(q);
    std::vector<Vertex> chain;
    Vertex prev = -1, cur = w;
    while (true) {
        VertexMask next = g.neighbors(cur) & comp & ~(prev >= 0 ? bit(prev) : 0);
        if (!next) break;
        prev = cur;
        cur = std::countr_zero(next);
        chain.push_back(cur);
    }
    return chain;
}

// Colors k_j -> k_{j-1} become 0 for every j, working back from the far end.
void orient_chain(Walk& walk, Vertex w, const std::vector<Vertex>& chain) {
    const int r = static_cast<int>(chain.size());
    auto prev = [&](int j) { return j == 0 ? w : chain[j - 1]; };
    for (int guard = 0; guard < (r + 1) * (r + 1) * 4; ++guard) {
        int bad = -1;
        for (int j = r - 1; j >= 0; --j)
            if (walk.q.color_of(chain[j], prev(j)) != 0) {
                bad = j;
                break;
            }
        if (bad < 0) return;
        walk.mu(chain[bad], walk.q.color_of(chain[bad], prev(bad)));
    }
    throw NormalizationError("component_to_line", "chain orientation did not settle");
}

// Breadth-first search over mutations inside Q_w \ {w} until Q_w is a rooted line.
std::vector<Vertex> line_search(const ColoredQuiver& start, VertexMask comp, Vertex w) {
    auto movable = mask_vertices(comp & ~bit(w));
    auto compv = mask_vertices(comp);
    struct Node {
        ColoredQuiver q;
        int parent;
        Vertex via;
    };
    std::vector<Node> nodes{{start, -1, -1}};
    std::unordered_map<std::string, int> seen;
    seen.emplace(positional_digest(induced_subquiver(start, compv)), 0);
    const std::size_t limit = 200000;
    for (std::size_t head = 0; head < nodes.size() && nodes.size() < limit; ++head) {
        if (rooted_line(nodes[head].q, comp, w)) {
            std::vector<Vertex> seq;
            for (int at = static_cast<int>(head); nodes[at].parent >= 0; at = nodes[at].parent) seq.push_back(nodes[at].via);
            std::reverse(seq.begin(), seq.end());
            return seq;
        }
        for (Vertex u : movable) {
            ColoredQuiver next = mutate(nodes[head].q, u);
            auto key = positional_digest(induced_subquiver(next, compv));
            if (seen.emplace(key, static_cast<int>(nodes.size())).second)
                nodes.push_back({std::move(next), static_cast<int>(head), u});
        }
    }
    throw NormalizationError("component_to_line", fmt::format("no line form found for the component of {}", w));
}

const Peripheral& peripheral_of(const ClassCertificate& cert, Vertex w) {
    const Peripheral* p = cert.peripheral(w);
    if (!p) throw HypothesisViolation(fmt::format("vertex {} is not peripheral", w));
    return *p;
}

ClassCertificate recertify(const ColoredQuiver& q, const ClassCertificate& old, const char* stage) {
    auto v = check_Qmpq(q, std::make_pair(old.p, old.q));
    if (!v.member) throw NormalizationError(stage, fmt::format("class membership lost ({}: {})", v.failed, v.detail));
    return *v.certificate;
}

// mu_w^c, re-orient the chain, mu_w, then sweep the chain outward.
Walk attach_move(const ColoredQuiver& q, const ClassCertificate& cert, Vertex w, Vertex expected_target,
                 const char* stage) {
    const Peripheral& per = peripheral_of(cert, w);
    VertexMask comp = to_mask(per.component);
    if (!rooted_line(q, comp, w)) throw HypothesisViolation(fmt::format("component of {} is not in line form", w));
    auto chain = chain_from(q, comp, w);
    const auto& clique = cert.boundary_cliques[per.boundary_index];
    Walk walk{q, {}};
    orient_chain(walk, w, chain);
    auto [c, t] = min_out(walk.q, w, clique);
    if (t != expected_target)
        throw NormalizationError(stage, fmt::format("smallest color from {} points to {}, expected {}", w, t, expected_target));
    walk.mu(w, c);
    orient_chain(walk, w, chain);
    walk.mu(w);
    for (Vertex k : chain) walk.mu(k);
    return walk;
}

MoveResult absorb(const ColoredQuiver& q, const ClassCertificate& cert, Vertex w, Tag tag) {
    const char* stage = tag == Tag::Wp ? "absorb_Wp" : "absorb_Wq";
    const Peripheral& per = peripheral_of(cert, w);
    if (per.tag != tag) throw HypothesisViolation(fmt::format("vertex {} has tag {}", w, to_string(per.tag)));
    const auto& clique = cert.boundary_cliques[per.boundary_index];
    auto [c, t] = min_out(q, w, clique);
    Vertex a = per.triangle[0], a2 = per.triangle[1];
    Vertex expected = tag == Tag::Wp ? a : a2;
    if (t != expected)
        throw HypothesisViolation(fmt::format("smallest color from {} points to {}, not to central vertex {}", w, t, expected));
    Walk walk = attach_move(q, cert, w, expected, stage);
    ClassCertificate next = recertify(walk.q, cert, stage);
    const int l2 = cert.cycle.l + per.n_w;
    const int h2 = tag == Tag::Wp ? cert.cycle.h : cert.cycle.h + per.n_w;
    bool cycle_ok = next.cycle.l == l2 && (next.cycle.h == h2 || (cert.p == cert.q && next.cycle.h == l2 - h2));
    if (!cycle_ok)
        throw NormalizationError(stage, fmt::format("expected a ({}, {}) central cycle, found ({}, {})", l2, h2,
                                                    next.cycle.l, next.cycle.h));
    return {walk.q, walk.seq};
}

struct CycleParts {
    ColoredQuiver quiver;
    std::vector<Vertex> setup;                   // pumping and orientation fix
    std::vector<std::vector<Vertex>> concentrations;
    std::vector<std::vector<Vertex>> paths;    // the path of each concentration
};

CycleParts cycle_parts(const ColoredQuiver& q) {
    const int m = q.m(), n = q.n();
    CycleParts out{q, {}, {}, {}};
    if (n == 2) {
        Walk walk{q, {}};
        auto c = walk.q.color(0, 1);
        if (!c || walk.q.count(0, 1) != 2) throw HypothesisViolation("two-vertex quiver is not a double arrow");
        walk.mu(0, *c);
        out.quiver = walk.q;
        out.setup = walk.seq;
        return out;
    }
    auto cycle = detect_central_cycle(q);
    if (!cycle || cycle->l != n) throw HypothesisViolation("quiver is not a pure central cycle");
    for (Vertex v = 0; v < n; ++v)
        if (q.degree(v) != 2) throw HypothesisViolation("quiver is not a pure central cycle");

    Walk walk{q, {}};
    std::vector<Vertex> vs = cycle->vertices;
    const int l = n;
    auto colors = [&] {
        std::vector<Color> c(l);
        for (int i = 0; i < l; ++i) c[i] = walk.q.color_of(vs[i], vs[(i + 1) % l]);
        return c;
    };
    auto c = colors();
    auto has = [&](Color x) { return std::find(c.begin(), c.end(), x) != c.end(); };
    if (!has(0)) {
        if (!has(m)) {
            // vs[l-1] has incoming arrow l-2 and outgoing arrow l-1.
            int d = std::min(m - c[l - 2], c[l - 1]);
            walk.mu(vs[l - 1], d);
            c = colors();
        }
        if (!has(0)) {
            std::reverse(vs.begin() + 1, vs.end());
            c = colors();
        }
    }
    if (!has(0)) throw NormalizationError("cycle_normalize", "no arrow of color 0 after pumping");
    // Rotate so that the last arrow vs[l-1] -> vs[0] has color 0.
    int k = static_cast<int>(std::find(c.begin(), c.end(), 0) - c.begin());
    std::rotate(vs.begin(), vs.begin() + (k + 1) % l, vs.end());
    c = colors();
    out.setup = walk.seq;

    int sum = 0;
    for (Color x : c) sum += x;
    const int h = sum / m;
    int s = static_cast<int>(std::find_if(c.begin(), c.end(), [](Color x) { return x != 0; }) - c.begin());
    for (int t = 0; t < h; ++t) {
        std::vector<Vertex> path(vs.begin() + s + t, vs.end());
        if (path_color(walk.q, path) == 0) break;
        auto r = concentrate_path_color(walk.q, path);
        walk.q = r.quiver;
        if (!r.sequence.empty()) {
            out.concentrations.push_back(r.sequence);
            out.paths.push_back(path);
        }
    }
    out.quiver = walk.q;
    if (!are_isomorphic(out.quiver, build_A_tilde(l - h, h, m)))
        throw NormalizationError("cycle_normalize", "cycle did not reach the consecutive form");
    return out;
}

}  // namespace

std::optional<std::pair<int, int>> a_tilde_shape(const ColoredQuiver& q) {
    const int n = q.n(), m = q.m();
    if (n < 2 || !is_valid(q)) return std::nullopt;
    if (n == 2) {
        auto c = q.color(0, 1);
        if (q.count(0, 1) == 2 && c && (*c == 0 || *c == m)) return std::make_pair(1, 1);
        return std::nullopt;
    }
    UnderlyingGraph g(q);
    if (!g.connected()) return std::nullopt;
    for (Vertex v = 0; v < n; ++v)
        if (std::popcount(g.neighbors(v)) != 2) return std::nullopt;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = 0; j < n; ++j)
            if (q.count(i, j) > 1) return std::nullopt;
    std::vector<Vertex> order{0};
    Vertex prev = 0, cur = std::countr_zero(g.neighbors(0));
    while (cur != 0) {
        order.push_back(cur);
        VertexMask next = g.neighbors(cur) & ~bit(prev);
        prev = cur;
        cur = std::countr_zero(next);
    }
    int p = 0, r = 0;
    for (int i = 0; i < n; ++i) {
        Color c = q.color_of(order[i], order[(i + 1) % n]);
        if (c == 0) ++p;
        else if (c == m) ++r;
        else return std::nullopt;
    }
    if (p == 0 || r == 0) return std::nullopt;
    return std::make_pair(p, r);
}

MoveResult concentrate_path_color(const ColoredQuiver& q, const std::vector<Vertex>& path) {
    const int m = q.m();
    const int L = static_cast<int>(path.size());
    if (L < 2) throw HypothesisViolation("path needs at least two vertices");
    for (int t = 1; t + 1 < L; ++t) {
        auto nb = q.neighbors(path[t]);
        std::vector<Vertex> expect{path[t - 1], path[t + 1]};
        std::sort(expect.begin(), expect.end());
        if (nb != expect) throw HypothesisViolation(fmt::format("interior vertex {} has neighbors off the path", path[t]));
    }
    Walk walk{q, {}};
    auto c = [&](int t) { return walk.q.color_of(path[t], path[t + 1]); };
    int sum = path_color(q, path);
    if (sum < m || sum % m != 0)
        throw HypothesisViolation(fmt::format("path color {} is not a positive multiple of {}", sum, m));
    for (int guard = 0; guard < 4 * L * (m + 1) + 8; ++guard) {
        if (c(0) == m) {
            if (path_color(walk.q, path) != sum) throw NormalizationError("path_concentrate", "path color changed");
            return {walk.q, walk.seq};
        }
        int j = 1;
        while (j + 1 < L && c(j) == 0) ++j;
        if (j + 1 >= L) throw NormalizationError("path_concentrate", "no color left to move");
        Color cj = c(j);
        for (int t = j; t >= 2; --t) walk.mu(path[t], cj);
        walk.mu(path[1], std::min(m - c(0), c(1)));
    }
    throw NormalizationError("path_concentrate", "did not terminate");
}

MoveResult normalize_central_cycle(const ColoredQuiver& q) {
    CycleParts parts = cycle_parts(q);
    MoveResult r{parts.quiver, parts.setup};
    for (const auto& s : parts.concentrations) r.sequence.insert(r.sequence.end(), s.begin(), s.end());
    return r;
}

MoveResult reduce_component_to_line(const ColoredQuiver& q, const ClassCertificate& cert, Vertex w) {
    const Peripheral& per = peripheral_of(cert, w);
    const VertexMask comp = to_mask(per.component);
    Walk walk{q, {}};
    const int n = static_cast<int>(per.component.size());

    for (int guard = 0; guard < 8 * n * n + 8 && !rooted_line(walk.q, comp, w); ++guard) {
        UnderlyingGraph g(walk.q);
        const int before = edges_within(g, comp);
        auto cliques = g.maximal_cliques(comp);
        std::vector<std::vector<Vertex>> big;
        for (VertexMask k : cliques)
            if (std::popcount(k) >= 3) big.push_back(mask_vertices(k));
        std::sort(big.begin(), big.end());

        bool progressed = false;
        // A clique vertex other than w with no neighbor outside the clique.
        for (const auto& k : big) {
            VertexMask km = to_mask(k);
            for (Vertex u : k) {
                if (u == w || (g.neighbors(u) & ~km)) continue;
                auto [d, t] = min_out(walk.q, u, walk.q.neighbors(u));
                Walk trial = walk;
                trial.mu(u, d + 1);
                if (edges_within(UnderlyingGraph(trial.q), comp) < before) {
                    walk = std::move(trial);
                    progressed = true;
                }
                break;
            }
            if (progressed) break;
        }
        if (progressed) continue;
        // Move a clique one step toward a pendant leaf so that the leaf becomes free.
        for (const auto& k : big) {
            VertexMask km = to_mask(k);
            for (Vertex v1 : k) {
                if (v1 == w) continue;
                VertexMask outside = g.neighbors(v1) & ~km;
                if (std::popcount(outside) != 1) continue;
                Vertex x1 = std::countr_zero(outside);
                if (x1 == w || std::popcount(g.neighbors(x1)) != 1) continue;
                auto [d, t] = min_out(walk.q, v1, k);
                Walk trial = walk;
                Color e = trial.q.color_of(v1, x1);
                trial.mu(x1, d - e);
                trial.mu(v1, d + 1);
                if (edges_within(UnderlyingGraph(trial.q), comp) <= before) {
                    walk = std::move(trial);
                    progressed = true;
                }
                break;
            }
            if (progressed) break;
        }
        if (!progressed) break;
    }
    if (!rooted_line(walk.q, comp, w)) {
        for (Vertex v : line_search(walk.q, comp, w)) walk.mu(v);
    }
    orient_chain(walk, w, chain_from(walk.q, comp, w));
    return {walk.q, walk.seq};
}

MoveResult shrink_boundary_clique(const ColoredQuiver& q, const ClassCertificate& cert, Vertex w) {
    const Peripheral& per = peripheral_of(cert, w);
    const auto& clique = cert.boundary_cliques[per.boundary_index];
    int peripherals = 0;
    for (Vertex u : clique) peripherals += cert.peripheral(u) != nullptr;
    if (peripherals < 2)
        throw HypothesisViolation(fmt::format("boundary clique of {} holds no other peripheral vertex", w));
    auto [c, t] = min_out(q, w, clique);
    if (!cert.peripheral(t))
        throw HypothesisViolation(fmt::format("smallest color from {} points to central vertex {}", w, t));
    Walk walk = attach_move(q, cert, w, t, "clique_shrink");
    ClassCertificate next = recertify(walk.q, cert, "clique_shrink");
    const Peripheral* now = next.peripheral(w);
    if (!now) throw NormalizationError("clique_shrink", fmt::format("{} is no longer peripheral", w));
    const auto& shrunk = next.boundary_cliques[now->boundary_index];
    if (shrunk.size() + 1 != clique.size() || std::find(shrunk.begin(), shrunk.end(), t) != shrunk.end())
        throw NormalizationError("clique_shrink", fmt::format("boundary clique of {} did not lose {}", w, t));
    return {walk.q, walk.seq};
}

MoveResult absorb_peripheral_Wp(const ColoredQuiver& q, const ClassCertificate& cert, Vertex w) {
    return absorb(q, cert, w, Tag::Wp);
}

MoveResult absorb_peripheral_Wq(const ColoredQuiver& q, const ClassCertificate& cert, Vertex w) {
    return absorb(q, cert, w, Tag::Wq);
}

std::string to_string(StageTag tag) {
    switch (tag) {
        case StageTag::ComponentToLine: return "COMPONENT_TO_LINE";
        case StageTag::CliqueShrink: return "CLIQUE_SHRINK";
        case StageTag::AbsorbWp: return "ABSORB_WP";
        case StageTag::AbsorbWq: return "ABSORB_WQ";
        case StageTag::PathConcentrate: return "PATH_CONCENTRATE";
        case StageTag::CycleNormalize: return "CYCLE_NORMALIZE";
        case StageTag::FinalRotate: return "FINAL_ROTATE";
    }
    return "UNKNOWN";
}

std::optional<StageTag> stage_tag_from_string(const std::string& s) {
    for (StageTag t : {StageTag::ComponentToLine, StageTag::CliqueShrink, StageTag::AbsorbWp, StageTag::AbsorbWq,
                       StageTag::PathConcentrate, StageTag::CycleNormalize, StageTag::FinalRotate})
        if (to_string(t) == s) return t;
    return std::nullopt;
}

NormalizationResult normalize(const ColoredQuiver& input) {
    auto verdict = check_Qmpq(input);
    if (!verdict.member)
        throw NormalizationError("input", fmt::format("not in an A~ mutation class ({}: {})", verdict.failed, verdict.detail));
    const int p = verdict.certificate->p, qq = verdict.certificate->q;
    const auto target = std::make_pair(p, qq);

    NormalizationResult result;
    result.p = p;
    result.q = qq;
    result.trace.m = input.m();
    result.trace.p = p;
    result.trace.q = qq;
    ColoredQuiver cur = input;
    auto record = [&](StageTag tag, Vertex focus, const MoveResult& r, std::vector<Vertex> fixed) {
        if (r.sequence.empty()) return;
        for (Vertex v : fixed)
            if (std::find(r.sequence.begin(), r.sequence.end(), v) != r.sequence.end())
                throw NormalizationError(to_string(tag), fmt::format("stage mutated the fixed vertex {}", v));
        Stage s{tag, focus, r.sequence, {}, std::move(fixed), positional_digest(cur), positional_digest(r.quiver)};
        result.trace.stages.push_back(std::move(s));
        cur = r.quiver;
    };
    auto certify = [&](const char* stage) {
        auto v = check_Qmpq(cur, target);
        if (!v.member) throw NormalizationError(stage, fmt::format("class membership lost ({}: {})", v.failed, v.detail));
        return *v.certificate;
    };

    for (int guard = 0; guard < 4 * input.n() + 4; ++guard) {
        ClassCertificate cert = certify("loop");
        if (cert.peripherals.empty()) break;
        const Peripheral first = cert.peripherals.front();
        const Vertex w = first.w;
        record(StageTag::ComponentToLine, w, reduce_component_to_line(cur, cert, w),
               {w, first.triangle[0], first.triangle[1]});
        cert = certify("component_to_line");
        const Peripheral& per = *cert.peripheral(w);
        std::vector<Vertex> ends{per.triangle[0], per.triangle[1]};
        auto [c, t] = min_out(cur, w, cert.boundary_cliques[per.boundary_index]);
        if (cert.peripheral(t)) {
            record(StageTag::CliqueShrink, w, shrink_boundary_clique(cur, cert, w), ends);
        } else if (per.tag == Tag::Wp) {
            record(StageTag::AbsorbWp, w, absorb_peripheral_Wp(cur, cert, w), ends);
        } else {
            record(StageTag::AbsorbWq, w, absorb_peripheral_Wq(cur, cert, w), ends);
        }
    }
    if (!certify("loop").peripherals.empty()) throw NormalizationError("loop", "peripheral vertices remain");

    CycleParts parts = cycle_parts(cur);
    {
        Walk w{cur, {}};
        for (Vertex v : parts.setup) w.mu(v);
        record(StageTag::CycleNormalize, -1, {w.q, parts.setup}, {});
        for (std::size_t i = 0; i < parts.concentrations.size(); ++i) {
            Walk c{cur, {}};
            for (Vertex v : parts.concentrations[i]) c.mu(v);
            const auto& path = parts.paths[i];
            record(StageTag::PathConcentrate, -1, {c.q, parts.concentrations[i]}, {path.front(), path.back()});
        }
    }

    ColoredQuiver seed = build_A_tilde(p, qq, input.m());
    auto perm = find_isomorphism(cur, seed);
    if (!perm) throw NormalizationError("final_rotate", "final cycle is not isomorphic to the consecutive form");
    Stage rot{StageTag::FinalRotate, -1, {}, *perm, {}, positional_digest(cur), positional_digest(seed)};
    result.trace.stages.push_back(std::move(rot));
    result.normal_form = seed;
    return result;
}

ColoredQuiver replay_trace(const ColoredQuiver& input, const NormalizationTrace& trace) {
    ColoredQuiver cur = input;
    for (std::size_t i = 0; i < trace.stages.size(); ++i) {
        const Stage& s = trace.stages[i];
        std::string name = fmt::format("stage {} ({})", i, to_string(s.tag));
        if (positional_digest(cur) != s.before) throw NormalizationError(name, "digest before the stage does not match");
        cur = mutate_seq(cur, s.mutations);
        if (s.tag == StageTag::FinalRotate) cur = relabel(cur, s.relabeling);
        if (positional_digest(cur) != s.after) throw NormalizationError(name, "digest after the stage does not match");
    }
    return cur;
}

}  // namespace qmut
