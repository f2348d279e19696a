#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmut/classifier.hpp"
#include "qmut/quiver.hpp"

namespace qmut {

// A reduction step was applied outside its hypotheses.
class HypothesisViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The pipeline reached a state its postconditions rule out.
class NormalizationError : public std::runtime_error {
public:
    NormalizationError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct MoveResult {
    ColoredQuiver quiver;
    std::vector<Vertex> sequence;  // mutations in application order
};

// Recognizes a pure cycle whose arrows all have color 0 or m. Returns (p, q) with p
// arrows of color 0 and q of color m in the default traversal.
std::optional<std::pair<int, int>> a_tilde_shape(const ColoredQuiver& q);

// Path a_1 -> ... -> a_l of total color h*m (h >= 1) whose interior vertices have no
// other neighbors. Only interior vertices are mutated; afterwards a_1 -> a_2 has color m
// and the remaining arrows carry (h-1)*m.
MoveResult concentrate_path_color(const ColoredQuiver& q, const std::vector<Vertex>& path);

// Pure central cycle (every vertex on the cycle) to A~_{l-h,h} in its consecutive form.
MoveResult normalize_central_cycle(const ColoredQuiver& q);

// Makes Q_w a line hanging off w with every chain arrow of color 0 pointing toward w.
// Never mutates w or vertices outside Q_w.
MoveResult reduce_component_to_line(const ColoredQuiver& q, const ClassCertificate& cert, Vertex w);

// w and w2 share a boundary clique and the smallest color leaving w inside it points to
// the peripheral vertex w2: detaches w2 from the clique. Q_w must be in line form.
MoveResult shrink_boundary_clique(const ColoredQuiver& q, const ClassCertificate& cert, Vertex w);

// Absorbs Q_w (line form, tag Wp resp. Wq) into the central cycle, which grows by n_w.
MoveResult absorb_peripheral_Wp(const ColoredQuiver& q, const ClassCertificate& cert, Vertex w);
MoveResult absorb_peripheral_Wq(const ColoredQuiver& q, const ClassCertificate& cert, Vertex w);

enum class StageTag {
    ComponentToLine,
    CliqueShrink,
    AbsorbWp,
    AbsorbWq,
    PathConcentrate,
    CycleNormalize,
    FinalRotate,
};
std::string to_string(StageTag tag);
std::optional<StageTag> stage_tag_from_string(const std::string& s);

struct Stage {
    StageTag tag;
    Vertex focus = -1;               // peripheral vertex the stage works on, if any
    std::vector<Vertex> mutations;
    std::vector<Vertex> relabeling;  // FinalRotate only: perm[v] = new label
    std::vector<Vertex> fixed;       // vertices the stage must leave unmutated
    std::string before;              // positional digests
    std::string after;
};

struct NormalizationTrace {
    int m = 1;
    int p = 0;
    int q = 0;
    std::vector<Stage> stages;
};

struct NormalizationResult {
    ColoredQuiver normal_form;  // equals build_A_tilde(p, q, m)
    int p = 0;
    int q = 0;
    NormalizationTrace trace;
};

// Input must belong to some class of A~_{p,q}; throws NormalizationError otherwise.
NormalizationResult normalize(const ColoredQuiver& q);

// Replays every stage from `input`, checking the recorded digests. Returns the final
// quiver; throws NormalizationError on the first mismatch.
ColoredQuiver replay_trace(const ColoredQuiver& input, const NormalizationTrace& trace);

}  // namespace qmut
