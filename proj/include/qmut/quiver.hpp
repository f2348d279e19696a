#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmut {

using Vertex = int;
using Color = int;

struct Arrow {
    Vertex from = 0;
    Vertex to = 0;
    Color color = 0;
    int count = 0;

    friend bool operator==(const Arrow&, const Arrow&) = default;
    friend auto operator<=>(const Arrow&, const Arrow&) = default;
};

enum class ViolationKind { Loop, NotMonochromatic, NotSkewSymmetric };

struct Violation {
    ViolationKind kind;
    Vertex i = 0;
    Vertex j = 0;
    Color c = 0;  // meaningful for Loop and NotSkewSymmetric
    std::string message;
};

std::string to_string(ViolationKind kind);

class InvariantError : public std::runtime_error {
public:
    explicit InvariantError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

// m-colored quiver on vertices 0..n-1 with dense multiplicity storage.
// Value type: operations below return new quivers and never modify inputs.
class ColoredQuiver {
public:
    ColoredQuiver() = default;
    ColoredQuiver(int m, int n);

    int m() const { return m_; }
    int n() const { return n_; }
    int colors() const { return m_ + 1; }

    int multiplicity(Vertex i, Vertex j, Color c) const;
    // Unchecked access for hot loops.
    int raw(Vertex i, Vertex j, Color c) const { return data_[index(i, j, c)]; }
    void set_multiplicity(Vertex i, Vertex j, Color c, int count);
    void add_multiplicity(Vertex i, Vertex j, Color c, int count);

    // Writes i->j of color c and the partner j->i of color m-c, replacing whatever
    // colors the pair carried before. count == 0 removes the pair.
    void set_pair(Vertex i, Vertex j, Color c, int count = 1);

    // Total number of arrows i->j over all colors.
    int count(Vertex i, Vertex j) const;
    bool adjacent(Vertex i, Vertex j) const { return count(i, j) > 0 || count(j, i) > 0; }
    // Color of the arrows i->j, if there are any. Takes the smallest color present.
    std::optional<Color> color(Vertex i, Vertex j) const;
    // Like color() but throws when i and j are not joined by an arrow i->j.
    Color color_of(Vertex i, Vertex j) const;

    std::vector<Vertex> neighbors(Vertex v) const;
    int degree(Vertex v) const;

    // Every nonzero multiplicity as (from, to, color, count), sorted.
    std::vector<Arrow> arrows() const;
    // One record per unordered pair {i, j}, i < j, listing the arrows i->j.
    std::vector<Arrow> half_arrows() const;

    const std::vector<std::string>& names() const { return names_; }
    void set_names(std::vector<std::string> names);
    std::string name(Vertex v) const;

    // Equality ignores vertex names.
    friend bool operator==(const ColoredQuiver& a, const ColoredQuiver& b) {
        return a.m_ == b.m_ && a.n_ == b.n_ && a.data_ == b.data_;
    }

private:
    std::size_t index(Vertex i, Vertex j, Color c) const {
        return (static_cast<std::size_t>(i) * n_ + j) * (m_ + 1) + c;
    }
    void check_vertex(Vertex v) const;

    int m_ = 1;
    int n_ = 0;
    std::vector<std::uint16_t> data_;
    std::vector<std::string> names_;
};

Color mod_color(int c, int m);

std::vector<Violation> validate(const ColoredQuiver& q);
bool is_valid(const ColoredQuiver& q);
// Throws InvariantError listing every violation.
void require_valid(const ColoredQuiver& q);

// Both mutations throw InvariantError on invalid input and std::out_of_range for a bad j.
// Closed-form mutation at j. Exact on quivers of the mutation classes studied here;
// on arbitrary quivers it may disagree with mutate_steps.
ColoredQuiver mutate_formula(const ColoredQuiver& q, Vertex j);
// Composite / cancel / recolor procedure.
ColoredQuiver mutate_steps(const ColoredQuiver& q, Vertex j);
// Library mutation (mutate_formula). Cross-checks against mutate_steps when enabled.
ColoredQuiver mutate(const ColoredQuiver& q, Vertex j);
ColoredQuiver mutate_power(const ColoredQuiver& q, Vertex j, int times);
ColoredQuiver mutate_seq(const ColoredQuiver& q, const std::vector<Vertex>& sequence);
// mu_j^{-1} = mu_j^m. Throws std::domain_error when mu_j does not undo it.
ColoredQuiver inverse_mutate(const ColoredQuiver& q, Vertex j);

class CrosscheckError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Formula-vs-steps cross-check inside mutate(). Defaults to the QMUT_DEBUG_CROSSCHECK
// environment variable.
void set_crosscheck(bool enabled);
bool crosscheck_enabled();

// perm[v] is the new label of vertex v.
ColoredQuiver relabel(const ColoredQuiver& q, const std::vector<Vertex>& perm);
// Subquiver induced on the listed vertices, relabeled 0..k-1 in list order.
ColoredQuiver induced_subquiver(const ColoredQuiver& q, const std::vector<Vertex>& vertices);

// Directed multigraph; count[i][j] arrows i->j.
struct Digraph {
    int n = 0;
    std::vector<std::vector<int>> count;

    int arrows() const;
    int out_degree(Vertex v) const;
    int in_degree(Vertex v) const;
};

// The arrows of color 0, on the same vertex set.
Digraph zero_colored_part(const ColoredQuiver& q);
// Plain sum of colors of the arrows along consecutive vertices.
int path_color(const ColoredQuiver& q, const std::vector<Vertex>& path);

// Cycle v0 -> v1 -> ... -> v_{p+q-1} -> v0; the first p arrows have color 0 and the
// remaining q have color m. p = q = 1 produces the double arrow v0 => v1 of color 0.
ColoredQuiver build_A_tilde(int p, int q, int m);
// Path 0 - 1 - ... - n-1 with colors[i] the color of i -> i+1.
ColoredQuiver build_line_quiver(int n, int m, const std::vector<Color>& colors);
ColoredQuiver build_line_quiver(const std::vector<Color>& colors, int m);
// All path colors 0.
ColoredQuiver build_line_quiver(int n, int m);

}  // namespace qmut
