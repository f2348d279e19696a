#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmut/quiver.hpp"

namespace qmut {

// Outcome of the triangle color relation at a vertex v with neighbors v1, v2.
enum class TriangleBranch { LowFirst, LowSecond, Neither };

// Color sum of the oriented triangle x -> y -> z -> x lies in {m-1, 2m+1}.
// Throws std::invalid_argument when some pair is not adjacent.
bool is_m_admissible_triangle(const ColoredQuiver& q, Vertex x, Vertex y, Vertex z);
int triangle_color_sum(const ColoredQuiver& q, Vertex x, Vertex y, Vertex z);
TriangleBranch triangle_color_relation(const ColoredQuiver& q, Vertex v, Vertex v1, Vertex v2);

// Central cycle a_1 -> a_2 -> ... -> a_l -> a_1 in traversal order. colors[i] is the
// color of a_i -> a_{i+1}; their sum is h*m.
struct CentralCycle {
    std::vector<Vertex> vertices;
    std::vector<Color> colors;
    int l = 0;
    int h = 0;

    bool contains(Vertex v) const;
    // Index of v in traversal order, or -1.
    int position(Vertex v) const;
    CentralCycle reversed(int m) const;
};

class AmbiguousCentralCycle : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every candidate central cycle: a double pair (l = 2), a triangle of color sum m or
// 2m (l = 3), or a chordless cycle with color sum h*m, 0 < h < l (l >= 4). Each in the
// default orientation: start at the smallest vertex, continue to its smaller cycle
// neighbor.
std::vector<CentralCycle> central_cycle_candidates(const ColoredQuiver& q);
// The unique candidate; nullopt if there is none, AmbiguousCentralCycle if several.
std::optional<CentralCycle> detect_central_cycle(const ColoredQuiver& q);

// Split of N(v) into two cliques through v with no arrows between their other members.
struct CliqueSplit {
    Vertex v = 0;
    std::vector<Vertex> first;   // including v
    std::vector<Vertex> second;  // including v
    int z = 0;                   // |N(v)|
    bool shares_partner = false; // both cliques contain the double-arrow partner of v
};

// Clique split at v. With a central cycle of length 2 the partner of a central vertex
// belongs to both cliques; with a central triangle the arrow between the two other
// central vertices may cross the split. Throws std::invalid_argument for isolated v.
std::optional<CliqueSplit> vertex_clique_split(const ColoredQuiver& q, Vertex v,
                                               const CentralCycle* central = nullptr);

// A clique of at least three vertices in `scope` whose removal (of its arrows) leaves a
// connected component of line shape.
std::optional<std::vector<Vertex>> find_almost_extremal_clique(const ColoredQuiver& q,
                                                               const std::vector<Vertex>& scope);

struct Verdict {
    bool member = false;
    std::string failed;  // name of the first failing condition
    std::string detail;
};

// Membership in the mutation class of an m-colored line quiver.
Verdict check_Qmn(const ColoredQuiver& q);

enum class Tag { Wp, Wq };
std::string to_string(Tag tag);

struct Peripheral {
    Vertex w = 0;
    int boundary_index = 0;              // i with w in D_i
    std::array<Vertex, 3> triangle{};    // (a_i, a_{i+1}, w)
    int triangle_color = 0;
    Tag tag = Tag::Wp;
    std::vector<Vertex> component;       // Q_w, w included
    int n_w = 0;
};

struct ClassCertificate {
    int m = 1;
    CentralCycle cycle;
    // boundary_cliques[i] is the clique containing a_i -> a_{i+1}.
    std::vector<std::vector<Vertex>> boundary_cliques;
    std::vector<Peripheral> peripherals;
    int x_p = 0;
    int x_q = 0;
    int p = 0;
    int q = 0;

    const Peripheral* peripheral(Vertex w) const;
    bool is_central(Vertex v) const { return cycle.contains(v); }
};

struct ClassVerdict {
    bool member = false;
    // "valid", "connected" or one of "a".."g" for the structural conditions.
    std::string failed;
    std::string detail;
    std::optional<ClassCertificate> certificate;
};

// Membership in the mutation class of A~_{p,q}. With a target the orientation is chosen
// so that the certificate reports exactly (p, q); without one the default orientation
// is used. Since A~_{p,q} and A~_{q,p} are isomorphic, certificates of one quiver come
// in a (p, q) / (q, p) pair.
ClassVerdict check_Qmpq(const ColoredQuiver& q,
                        std::optional<std::pair<int, int>> target = std::nullopt);

}  // namespace qmut
