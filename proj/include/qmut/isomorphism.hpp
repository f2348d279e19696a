#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmut/quiver.hpp"

namespace qmut {

// Label-independent form of a quiver: its arrow list under the lexicographically
// smallest relabeling. The digest is a hex byte encoding of (m, n, arrows), injective
// while n, m and multiplicities stay below 256.
struct CanonicalForm {
    int m = 1;
    int n = 0;
    std::vector<Arrow> arrows;
    std::string digest;

    friend bool operator==(const CanonicalForm& a, const CanonicalForm& b) {
        return a.m == b.m && a.n == b.n && a.arrows == b.arrows;
    }
};

// perm[v] is the canonical position of v; relabel(q, perm) is the canonical quiver.
std::vector<Vertex> canonical_labeling(const ColoredQuiver& q);
CanonicalForm canonical_form(const ColoredQuiver& q);
ColoredQuiver canonical_quiver(const ColoredQuiver& q);

bool are_isomorphic(const ColoredQuiver& a, const ColoredQuiver& b);
// perm with relabel(a, perm) == b, if one exists.
std::optional<std::vector<Vertex>> find_isomorphism(const ColoredQuiver& a, const ColoredQuiver& b);

std::string encode_digest(int m, int n, const std::vector<Arrow>& arrows);
// Digest of the quiver exactly as labeled.
std::string positional_digest(const ColoredQuiver& q);

}  // namespace qmut
