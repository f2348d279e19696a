#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmut/isomorphism.hpp"
#include "qmut/quiver.hpp"

namespace qmut {

struct ClassMember {
    CanonicalForm form;
    ColoredQuiver representative;  // the canonical quiver
    int depth = 0;                 // mutation distance from the seed
};

struct ClassEdge {
    std::string from;  // digest
    Vertex vertex = 0; // mutated vertex of the representative of `from`
    std::string to;

    friend auto operator<=>(const ClassEdge&, const ClassEdge&) = default;
};

struct MutationClass {
    int m = 1;
    int n = 0;
    std::string seed_digest;
    std::map<std::string, ClassMember> members;  // keyed by digest
    std::vector<ClassEdge> edges;                // sorted
    bool exhausted = false;                      // false when a limit stopped the search

    bool contains(const ColoredQuiver& q) const;
    std::size_t size() const { return members.size(); }
};

struct EnumerationOptions {
    std::size_t max_states = 100000000;
    int max_depth = -1;        // negative: unbounded
    int threads = 1;           // level-synchronous parallel expansion; output is identical
    bool record_edges = true;
};

// Breadth-first closure of the seed under all mutations, deduplicated up to isomorphism.
MutationClass enumerate_class(const ColoredQuiver& seed, const EnumerationOptions& options = {});

// Every connected valid quiver on p+q vertices (pairs simple of any color, or doubled)
// that check_Qmpq places in the class of A~_{p,q}, up to isomorphism. Throws
// std::length_error when (2m+3)^(n(n-1)/2) exceeds `budget`.
std::map<std::string, ColoredQuiver> generate_all_members(int p, int q, int m, double budget = 1e8);

// Search-space size of generate_all_members.
double generation_estimate(int n, int m);

struct TheoremReport {
    int p = 0;
    int q = 0;
    int m = 1;
    std::size_t bfs_size = 0;
    std::size_t structural_size = 0;
    std::vector<std::string> only_in_bfs;         // digests
    std::vector<std::string> only_in_structural;  // digests
    bool bfs_exhausted = false;

    bool agrees() const { return bfs_exhausted && only_in_bfs.empty() && only_in_structural.empty(); }
};

TheoremReport verify_theorem_A(int p, int q, int m, const EnumerationOptions& options = {});

struct ClassStatistics {
    std::size_t members = 0;
    std::size_t edges = 0;
    int max_depth = 0;
    std::map<std::pair<int, int>, std::size_t> central_cycles;    // (l, h)
    std::map<std::pair<int, int>, std::size_t> peripheral_counts; // (|W_p|, |W_q|)
    std::map<int, std::size_t> arrow_counts;                      // arrows per skew pair count
    std::size_t certificate_failures = 0;  // members whose certificate misses (p, q)
};

// Certificates are requested for (p, q); pass the class parameters.
ClassStatistics class_statistics(const MutationClass& cls, int p, int q);

}  // namespace qmut
