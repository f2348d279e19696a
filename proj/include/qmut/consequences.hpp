#pragma once

#include <string>
#include <vector>

#include "qmut/classifier.hpp"
#include "qmut/quiver.hpp"

namespace qmut {

// Directed cycles of length k in D as vertex sequences, counted up to rotation.
long long count_oriented_cycles(const Digraph& d, int k);

// Per peripheral vertex w of W_p or W_q: arrows of Q_w outside every oriented triangle
// of the 0-colored part, and the number of such triangles.
struct PeripheralCount {
    Vertex w = 0;
    Tag tag = Tag::Wp;
    int n_w = 0;
    int outside = 0;
    int triangles = 0;

    bool consistent() const { return n_w == outside + 2 * triangles + 1; }
};

// Counts read off the 0-colored part of an m = 1 class member. The certificate's
// traversal direction is taken as counterclockwise: r-counts use the central arrows of
// color 0 in traversal and W_p, s-counts the central arrows of color m and W_q.
struct BastianParameters {
    int r1p = 0;   // counterclockwise central arrows in no oriented triangle
    int r2p = 0;   // oriented triangles through a counterclockwise central arrow
    int r1pp = 0;  // arrows outside oriented triangles, summed over Q_w, w in W_p
    int r2pp = 0;  // oriented triangles, summed over Q_w, w in W_p
    int s1p = 0;
    int s2p = 0;
    int s1pp = 0;
    int s2pp = 0;
    bool reflected = false;  // set by verify_bastian when the reflected orientation was used
    int p = 0;               // parameters of the certificate
    int q = 0;
    std::vector<PeripheralCount> components;

    int recovered_p() const { return (r1p + r1pp) + 2 * (r2p + r2pp); }
    int recovered_q() const { return (s1p + s1pp) + 2 * (s2p + s2pp); }
    bool holds() const;
};

// Throws std::invalid_argument unless m = 1.
BastianParameters bastian_parameters(const ColoredQuiver& q, const ClassCertificate& cert);

// Both recovery formulas hold for some orientation of the central cycle. Throws
// std::invalid_argument when q is not a class member with m = 1.
bool verify_bastian(const ColoredQuiver& q);

struct ZeroPartComponent {
    std::vector<Vertex> vertices;
    int arrows = 0;
    int chi = 0;  // arrows - vertices + 1
    // Oriented cycles of length m + 2, each starting at its smallest vertex.
    std::vector<std::vector<Vertex>> oriented_cycles;
    // Simple cycles of the underlying multigraph, as distinct vertex sequences.
    std::vector<std::vector<Vertex>> cycles;
    // Some cycle is not an oriented (m+2)-cycle.
    bool has_delta = false;
    // Every arrow of the central cycle has color 0 or m and lies in this component.
    bool central_survives = false;
    bool a = false;  // in- and out-degree at most two
    bool b = false;  // no loops
    bool c = false;  // every cycle other than oriented (m+2)-cycles meets the central cycle
    bool d = false;  // with such a cycle: exactly chi - 1 oriented (m+2)-cycles
    bool e = false;  // without one: the oriented (m+2)-cycles are all cycles, chi of them

    bool passes() const { return a && b && c && d && e; }
};

struct ZeroPartReport {
    int m = 1;
    bool member = false;  // q passed check_Qmpq
    std::vector<ZeroPartComponent> components;

    bool passes() const;
};

ZeroPartReport check_zero_part_corollary(const ColoredQuiver& q);

}  // namespace qmut
