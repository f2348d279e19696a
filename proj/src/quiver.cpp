#include "qmut/quiver.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fmt/format.h>

namespace qmut {

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::Loop: return "loop";
        case ViolationKind::NotMonochromatic: return "monochromaticity";
        case ViolationKind::NotSkewSymmetric: return "skew-symmetry";
    }
    return "unknown";
}

namespace {
std::string summarize(const std::vector<Violation>& vs) {
    std::string out = fmt::format("{} invariant violation(s)", vs.size());
    for (const auto& v : vs) out += "; " + v.message;
    return out;
}
}  // namespace

InvariantError::InvariantError(std::vector<Violation> violations)
    : std::runtime_error(summarize(violations)), violations_(std::move(violations)) {}

Color mod_color(int c, int m) {
    int k = m + 1;
    return ((c % k) + k) % k;
}

ColoredQuiver::ColoredQuiver(int m, int n) : m_(m), n_(n) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
    data_.assign(static_cast<std::size_t>(n) * n * (m + 1), 0);
}

void ColoredQuiver::check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw std::out_of_range(fmt::format("vertex {} out of range 0..{}", v, n_ - 1));
}

int ColoredQuiver::multiplicity(Vertex i, Vertex j, Color c) const {
    check_vertex(i);
    check_vertex(j);
    if (c < 0 || c > m_) throw std::out_of_range(fmt::format("color {} out of range 0..{}", c, m_));
    return data_[index(i, j, c)];
}

void ColoredQuiver::set_multiplicity(Vertex i, Vertex j, Color c, int count) {
    check_vertex(i);
    check_vertex(j);
    if (c < 0 || c > m_) throw std::out_of_range(fmt::format("color {} out of range 0..{}", c, m_));
    if (count < 0 || count > 0xFFFF) throw std::out_of_range(fmt::format("multiplicity {} out of range", count));
    data_[index(i, j, c)] = static_cast<std::uint16_t>(count);
}

void ColoredQuiver::add_multiplicity(Vertex i, Vertex j, Color c, int count) {
    set_multiplicity(i, j, c, multiplicity(i, j, c) + count);
}

void ColoredQuiver::set_pair(Vertex i, Vertex j, Color c, int count) {
    check_vertex(i);
    check_vertex(j);
    for (Color t = 0; t <= m_; ++t) {
        data_[index(i, j, t)] = 0;
        data_[index(j, i, t)] = 0;
    }
    if (count == 0) return;
    set_multiplicity(i, j, c, count);
    set_multiplicity(j, i, m_ - c, count);
}

int ColoredQuiver::count(Vertex i, Vertex j) const {
    check_vertex(i);
    check_vertex(j);
    int total = 0;
    for (Color c = 0; c <= m_; ++c) total += data_[index(i, j, c)];
    return total;
}

std::optional<Color> ColoredQuiver::color(Vertex i, Vertex j) const {
    check_vertex(i);
    check_vertex(j);
    for (Color c = 0; c <= m_; ++c)
        if (data_[index(i, j, c)] > 0) return c;
    return std::nullopt;
}

Color ColoredQuiver::color_of(Vertex i, Vertex j) const {
    auto c = color(i, j);
    if (!c) throw std::invalid_argument(fmt::format("no arrow {} -> {}", i, j));
    return *c;
}

std::vector<Vertex> ColoredQuiver::neighbors(Vertex v) const {
    check_vertex(v);
    std::vector<Vertex> out;
    for (Vertex u = 0; u < n_; ++u)
        if (u != v && adjacent(v, u)) out.push_back(u);
    return out;
}

int ColoredQuiver::degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

std::vector<Arrow> ColoredQuiver::arrows() const {
    std::vector<Arrow> out;
    for (Vertex i = 0; i < n_; ++i)
        for (Vertex j = 0; j < n_; ++j)
            for (Color c = 0; c <= m_; ++c)
                if (int k = data_[index(i, j, c)]; k > 0) out.push_back({i, j, c, k});
    return out;
}

std::vector<Arrow> ColoredQuiver::half_arrows() const {
    std::vector<Arrow> out;
    for (Vertex i = 0; i < n_; ++i)
        for (Vertex j = i + 1; j < n_; ++j)
            for (Color c = 0; c <= m_; ++c)
                if (int k = data_[index(i, j, c)]; k > 0) out.push_back({i, j, c, k});
    return out;
}

void ColoredQuiver::set_names(std::vector<std::string> names) {
    if (!names.empty() && static_cast<int>(names.size()) != n_)
        throw std::invalid_argument("name list length must equal the vertex count");
    names_ = std::move(names);
}

std::string ColoredQuiver::name(Vertex v) const {
    check_vertex(v);
    return names_.empty() ? std::to_string(v) : names_[v];
}

std::vector<Violation> validate(const ColoredQuiver& q) {
    std::vector<Violation> out;
    const int n = q.n(), m = q.m();
    for (Vertex i = 0; i < n; ++i)
        for (Color c = 0; c <= m; ++c)
            if (q.multiplicity(i, i, c) > 0)
                out.push_back({ViolationKind::Loop, i, i, c, fmt::format("loop at {} of color {}", i, c)});
    auto colors_used = [&](Vertex i, Vertex j) {
        int used = 0;
        for (Color c = 0; c <= m; ++c) used += q.multiplicity(i, j, c) > 0;
        return used;
    };
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (colors_used(i, j) > 1 || colors_used(j, i) > 1)
                out.push_back({ViolationKind::NotMonochromatic, i, j, 0,
                               fmt::format("pair ({}, {}) carries more than one color", i, j)});
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            for (Color c = 0; c <= m; ++c)
                if (q.multiplicity(i, j, c) != q.multiplicity(j, i, m - c))
                    out.push_back({ViolationKind::NotSkewSymmetric, i, j, c,
                                   fmt::format("q[{}][{}][{}] = {} but q[{}][{}][{}] = {}", i, j, c,
                                               q.multiplicity(i, j, c), j, i, m - c, q.multiplicity(j, i, m - c))});
    return out;
}

bool is_valid(const ColoredQuiver& q) { return validate(q).empty(); }

void require_valid(const ColoredQuiver& q) {
    auto vs = validate(q);
    if (!vs.empty()) throw InvariantError(std::move(vs));
}

ColoredQuiver mutate_formula(const ColoredQuiver& q, Vertex j) {
    const int n = q.n(), m = q.m();
    if (j < 0 || j >= n) throw std::out_of_range(fmt::format("mutation vertex {} out of range", j));
    require_valid(q);
    ColoredQuiver out(m, n);
    out.set_names(q.names());
    auto mc = [m](int c) { return mod_color(c, m); };
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex k = 0; k < n; ++k) {
            if (i == k) continue;
            for (Color c = 0; c <= m; ++c) {
                int value;
                if (k == j) {
                    value = q.raw(i, j, mc(c - 1));
                } else if (i == j) {
                    value = q.raw(j, k, mc(c + 1));
                } else {
                    int others = 0;
                    for (Color t = 0; t <= m; ++t)
                        if (t != c) others += q.raw(i, k, t);
                    value = q.raw(i, k, c) - others +
                            (q.raw(i, j, c) - q.raw(i, j, mc(c - 1))) * q.raw(j, k, 0) +
                            q.raw(i, j, m) * (q.raw(j, k, c) - q.raw(j, k, mc(c + 1)));
                    value = std::max(0, value);
                }
                if (value) out.set_multiplicity(i, k, c, value);
            }
        }
    }
    return out;
}

ColoredQuiver mutate_steps(const ColoredQuiver& q, Vertex j) {
    const int n = q.n(), m = q.m();
    if (j < 0 || j >= n) throw std::out_of_range(fmt::format("mutation vertex {} out of range", j));
    require_valid(q);
    ColoredQuiver work = q;

    // Composites i -(c)-> j -(0)-> k.
    for (Vertex i = 0; i < n; ++i) {
        if (i == j) continue;
        for (Color c = 0; c <= m; ++c) {
            int a = q.multiplicity(i, j, c);
            if (!a) continue;
            for (Vertex k = 0; k < n; ++k) {
                if (k == j || k == i) continue;
                int b = q.multiplicity(j, k, 0);
                if (!b) continue;
                work.add_multiplicity(i, k, c, a * b);
                work.add_multiplicity(k, i, m - c, a * b);
            }
        }
    }

    // Cancel opposite colors, keeping the pair skew-symmetric.
    for (Vertex i = 0; i < n; ++i) {
        for (Vertex k = i + 1; k < n; ++k) {
            if (i == j || k == j) continue;
            while (true) {
                std::vector<Color> present;
                for (Color c = 0; c <= m; ++c)
                    if (work.multiplicity(i, k, c) > 0) present.push_back(c);
                if (present.size() < 2) break;
                Color c1 = present[0], c2 = present[1];
                int d = std::min(work.multiplicity(i, k, c1), work.multiplicity(i, k, c2));
                for (Color c : {c1, c2}) {
                    work.add_multiplicity(i, k, c, -d);
                    work.add_multiplicity(k, i, m - c, -d);
                }
            }
        }
    }

    // Recolor arrows at j: +1 arriving, -1 leaving.
    ColoredQuiver out = work;
    for (Vertex i = 0; i < n; ++i) {
        if (i == j) continue;
        for (Color c = 0; c <= m; ++c) {
            out.set_multiplicity(i, j, c, 0);
            out.set_multiplicity(j, i, c, 0);
        }
        for (Color c = 0; c <= m; ++c) {
            if (int a = work.multiplicity(i, j, c)) out.set_multiplicity(i, j, mod_color(c + 1, m), a);
            if (int b = work.multiplicity(j, i, c)) out.set_multiplicity(j, i, mod_color(c - 1, m), b);
        }
    }
    return out;
}

namespace {
std::atomic<int>& crosscheck_flag() {
    static std::atomic<int> flag = [] {
        const char* env = std::getenv("QMUT_DEBUG_CROSSCHECK");
        return (env && std::string(env) != "0" && std::string(env) != "") ? 1 : 0;
    }();
    return flag;
}
}  // namespace

void set_crosscheck(bool enabled) { crosscheck_flag() = enabled ? 1 : 0; }
bool crosscheck_enabled() { return crosscheck_flag() != 0; }

ColoredQuiver mutate(const ColoredQuiver& q, Vertex j) {
    ColoredQuiver out = mutate_formula(q, j);
    if (crosscheck_enabled()) {
        if (!(out == mutate_steps(q, j)))
            throw CrosscheckError(fmt::format("formula and step mutation disagree at vertex {}", j));
    }
    return out;
}

ColoredQuiver mutate_power(const ColoredQuiver& q, Vertex j, int times) {
    ColoredQuiver out = q;
    times = mod_color(times, q.m());
    for (int t = 0; t < times; ++t) out = mutate(out, j);
    return out;
}

ColoredQuiver mutate_seq(const ColoredQuiver& q, const std::vector<Vertex>& sequence) {
    ColoredQuiver out = q;
    for (Vertex v : sequence) out = mutate(out, v);
    return out;
}

ColoredQuiver inverse_mutate(const ColoredQuiver& q, Vertex j) {
    ColoredQuiver out = mutate_power(q, j, q.m());
    if (!(mutate(out, j) == q)) throw std::domain_error("not invertible by power iteration");
    return out;
}

ColoredQuiver relabel(const ColoredQuiver& q, const std::vector<Vertex>& perm) {
    const int n = q.n();
    if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("permutation length mismatch");
    std::vector<bool> seen(n, false);
    for (Vertex v : perm) {
        if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("not a permutation");
        seen[v] = true;
    }
    ColoredQuiver out(q.m(), n);
    for (const Arrow& a : q.arrows()) out.set_multiplicity(perm[a.from], perm[a.to], a.color, a.count);
    if (!q.names().empty()) {
        std::vector<std::string> names(n);
        for (Vertex v = 0; v < n; ++v) names[perm[v]] = q.names()[v];
        out.set_names(std::move(names));
    }
    return out;
}

ColoredQuiver induced_subquiver(const ColoredQuiver& q, const std::vector<Vertex>& vertices) {
    const int k = static_cast<int>(vertices.size());
    ColoredQuiver out(q.m(), k);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (Color c = 0; c <= q.m(); ++c)
                if (int x = q.multiplicity(vertices[a], vertices[b], c)) out.set_multiplicity(a, b, c, x);
    if (!q.names().empty()) {
        std::vector<std::string> names;
        for (Vertex v : vertices) names.push_back(q.names()[v]);
        out.set_names(std::move(names));
    }
    return out;
}

int Digraph::arrows() const {
    int total = 0;
    for (const auto& row : count)
        for (int x : row) total += x;
    return total;
}

int Digraph::out_degree(Vertex v) const {
    int total = 0;
    for (int x : count.at(v)) total += x;
    return total;
}

int Digraph::in_degree(Vertex v) const {
    int total = 0;
    for (const auto& row : count) total += row.at(v);
    return total;
}

Digraph zero_colored_part(const ColoredQuiver& q) {
    Digraph g;
    g.n = q.n();
    g.count.assign(q.n(), std::vector<int>(q.n(), 0));
    for (Vertex i = 0; i < q.n(); ++i)
        for (Vertex j = 0; j < q.n(); ++j) g.count[i][j] = q.multiplicity(i, j, 0);
    return g;
}

int path_color(const ColoredQuiver& q, const std::vector<Vertex>& path) {
    int total = 0;
    for (std::size_t t = 0; t + 1 < path.size(); ++t) total += q.color_of(path[t], path[t + 1]);
    return total;
}

ColoredQuiver build_A_tilde(int p, int q, int m) {
    if (p < 1 || q < 1) throw std::invalid_argument("p and q must be positive");
    const int n = p + q;
    ColoredQuiver out(m, n);
    if (n == 2) {
        out.set_pair(0, 1, 0, 2);
        return out;
    }
    for (int i = 0; i < n; ++i) out.set_pair(i, (i + 1) % n, i < p ? 0 : m, 1);
    return out;
}

ColoredQuiver build_line_quiver(int n, int m, const std::vector<Color>& colors) {
    if (n < 1) throw std::invalid_argument("line quiver needs at least one vertex");
    if (static_cast<int>(colors.size()) != n - 1) throw std::invalid_argument("need n-1 path colors");
    ColoredQuiver out(m, n);
    for (int i = 0; i + 1 < n; ++i) {
        if (colors[i] < 0 || colors[i] > m) throw std::out_of_range("path color out of range");
        out.set_pair(i, i + 1, colors[i], 1);
    }
    return out;
}

ColoredQuiver build_line_quiver(const std::vector<Color>& colors, int m) {
    return build_line_quiver(static_cast<int>(colors.size()) + 1, m, colors);
}

ColoredQuiver build_line_quiver(int n, int m) {
    if (n < 1) throw std::invalid_argument("line quiver needs at least one vertex");
    return build_line_quiver(n, m, std::vector<Color>(n - 1, 0));
}

}  // namespace qmut
