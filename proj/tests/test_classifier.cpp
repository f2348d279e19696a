#include "doctest.h"

#include <algorithm>

#include "generators.hpp"
#include "qmut/classifier.hpp"
#include "qmut/graph.hpp"
#include "reference_quivers.hpp"

using namespace qmut;

namespace {

ColoredQuiver oriented_triangle(int m, Color c01, Color c12, Color c20) {
    ColoredQuiver q(m, 3);
    q.set_pair(0, 1, c01);
    q.set_pair(1, 2, c12);
    q.set_pair(2, 0, c20);
    return q;
}

ColoredQuiver pure_cycle(int m, const std::vector<Color>& colors) {
    const int l = static_cast<int>(colors.size());
    ColoredQuiver q(m, l);
    for (int i = 0; i < l; ++i) q.set_pair(i, (i + 1) % l, colors[i]);
    return q;
}

}  // namespace

TEST_CASE("admissible triangles have color sum m-1 or 2m+1") {
    CHECK(is_m_admissible_triangle(oriented_triangle(2, 0, 0, 1), 0, 1, 2));
    CHECK(is_m_admissible_triangle(oriented_triangle(2, 2, 2, 1), 0, 1, 2));
    CHECK_FALSE(is_m_admissible_triangle(oriented_triangle(2, 0, 0, 0), 0, 1, 2));
    CHECK(is_m_admissible_triangle(oriented_triangle(1, 0, 0, 0), 0, 1, 2));
    CHECK(triangle_color_sum(oriented_triangle(3, 1, 2, 3), 0, 1, 2) == 6);
    // Reading the triangle backwards replaces the sum s by 3m - s.
    CHECK(triangle_color_sum(oriented_triangle(3, 1, 2, 3), 0, 2, 1) == 3);
    CHECK_THROWS_AS(is_m_admissible_triangle(build_line_quiver(3, 1), 0, 1, 2), std::invalid_argument);
}

TEST_CASE("central triangle sums and admissible sums never overlap") {
    for (int m = 1; m <= 8; ++m)
        for (int s = 0; s <= 3 * m; ++s) {
            Color c0 = std::min(s, m), c1 = std::min(s - c0, m), c2 = s - c0 - c1;
            ColoredQuiver t = oriented_triangle(m, c0, c1, c2);
            bool admissible = is_m_admissible_triangle(t, 0, 1, 2);
            bool central = !central_cycle_candidates(t).empty();
            CHECK(admissible == (s == m - 1 || s == 2 * m + 1));
            CHECK(central == (s == m || s == 2 * m));
            CHECK_FALSE((admissible && central));
        }
}

TEST_CASE("triangle color relation picks the lower-colored neighbor") {
    // v = 0 with v1 = 1, v2 = 2.
    ColoredQuiver low_first(2, 3);
    low_first.set_pair(0, 1, 0);
    low_first.set_pair(0, 2, 1);
    low_first.set_pair(1, 2, 0);
    CHECK(triangle_color_relation(low_first, 0, 1, 2) == TriangleBranch::LowFirst);

    ColoredQuiver low_second(2, 3);
    low_second.set_pair(0, 1, 2);
    low_second.set_pair(0, 2, 0);
    low_second.set_pair(1, 2, 1);
    CHECK(triangle_color_relation(low_second, 0, 1, 2) == TriangleBranch::LowSecond);

    ColoredQuiver neither(2, 3);
    neither.set_pair(0, 1, 0);
    neither.set_pair(0, 2, 1);
    neither.set_pair(1, 2, 1);
    CHECK(triangle_color_relation(neither, 0, 1, 2) == TriangleBranch::Neither);
}

TEST_CASE("holes are chordless cycles of length at least four") {
    CHECK(find_holes(build_line_quiver(5, 1)).empty());
    CHECK(find_holes(oriented_triangle(1, 0, 0, 1)).empty());
    auto holes = find_holes(build_A_tilde(3, 2, 1));
    REQUIRE(holes.size() == 1);
    CHECK(holes[0] == std::vector<Vertex>{0, 1, 2, 3, 4});
    ColoredQuiver chorded = build_A_tilde(2, 2, 1);
    chorded.set_pair(0, 2, 0);
    CHECK(find_holes(chorded).empty());
}

TEST_CASE("central cycle detection") {
    auto a31 = detect_central_cycle(build_A_tilde(3, 1, 2));
    REQUIRE(a31);
    CHECK(a31->l == 4);
    CHECK(a31->h == 1);
    CHECK(a31->vertices == std::vector<Vertex>{0, 1, 2, 3});
    CHECK(a31->colors == std::vector<Color>{0, 0, 0, 2});

    auto rev = a31->reversed(2);
    CHECK(rev.vertices == std::vector<Vertex>{0, 3, 2, 1});
    CHECK(rev.colors == std::vector<Color>{0, 2, 2, 2});
    CHECK(rev.h == 3);

    auto kr = detect_central_cycle(build_A_tilde(1, 1, 2));
    REQUIRE(kr);
    CHECK(kr->l == 2);

    CHECK_FALSE(detect_central_cycle(build_line_quiver(4, 2)));

    ColoredQuiver two(1, 4);
    two.set_pair(0, 1, 0, 2);
    two.set_pair(1, 2, 0, 1);
    two.set_pair(2, 3, 0, 2);
    CHECK_THROWS_AS(detect_central_cycle(two), AmbiguousCentralCycle);

    auto eleven = detect_central_cycle(fixtures::eleven_vertex_example());
    REQUIRE(eleven);
    namespace e = fixtures::ex11;
    CHECK(eleven->vertices == std::vector<Vertex>{e::a1, e::a2, e::a3, e::a4});
    CHECK(eleven->h == 2);
}

TEST_CASE("membership in the class of a line quiver") {
    CHECK(check_Qmn(build_line_quiver(5, 2)).member);
    CHECK(check_Qmn(oriented_triangle(2, 0, 0, 1)).member);
    Verdict kr = check_Qmn(build_A_tilde(1, 1, 2));
    CHECK_FALSE(kr.member);
    CHECK(kr.failed == "simple");
    Verdict cyc = check_Qmn(build_A_tilde(2, 2, 2));
    CHECK_FALSE(cyc.member);
    CHECK(cyc.failed == "holes");
    CHECK_FALSE(check_Qmn(oriented_triangle(2, 0, 1, 1)).member);
    ColoredQuiver split(1, 3);
    split.set_pair(0, 1, 0);
    CHECK(check_Qmn(split).failed == "connected");
}

TEST_CASE("check_Qmpq on the seeds") {
    for (int m = 1; m <= 3; ++m)
        for (int p = 1; p <= 4; ++p)
            for (int q = 1; q <= 4; ++q) {
                CAPTURE(m);
                CAPTURE(p);
                CAPTURE(q);
                ClassVerdict v = check_Qmpq(build_A_tilde(p, q, m));
                REQUIRE(v.member);
                const ClassCertificate& c = *v.certificate;
                CHECK(c.p == p);
                CHECK(c.q == q);
                CHECK(c.peripherals.empty());
                CHECK(c.x_p == 0);
                CHECK(c.x_q == 0);
                if (p + q > 2) {
                    CHECK(c.cycle.l == p + q);
                    CHECK(c.cycle.h == q);
                } else {
                    CHECK(c.cycle.l == 2);
                }
            }
}

TEST_CASE("check_Qmpq on the eleven-vertex example") {
    namespace e = fixtures::ex11;
    ColoredQuiver ex = fixtures::eleven_vertex_example();
    ClassVerdict v = check_Qmpq(ex, std::make_pair(5, 6));
    REQUIRE(v.member);
    const ClassCertificate& c = *v.certificate;
    CHECK(c.cycle.l == 4);
    CHECK(c.cycle.h == 2);
    CHECK(c.x_p == 3);
    CHECK(c.x_q == 4);
    REQUIRE(c.peripherals.size() == 2);
    const Peripheral* pv = c.peripheral(e::v);
    const Peripheral* pw = c.peripheral(e::w);
    REQUIRE(pv);
    REQUIRE(pw);
    CHECK(pv->tag == Tag::Wp);
    CHECK(pv->n_w == 3);
    CHECK(pw->tag == Tag::Wq);
    CHECK(pw->n_w == 4);

    ClassVerdict flipped = check_Qmpq(ex, std::make_pair(6, 5));
    REQUIRE(flipped.member);
    CHECK(flipped.certificate->p == 6);
    CHECK(flipped.certificate->q == 5);

    ClassVerdict wrong = check_Qmpq(ex, std::make_pair(4, 7));
    CHECK_FALSE(wrong.member);
    CHECK(wrong.failed == "target");

    CHECK(check_Qmpq(fixtures::eleven_vertex_final(), std::make_pair(5, 6)).member);
    CHECK(check_Qmpq(fixtures::zero_part_example(), std::make_pair(8, 3)).member);
}

TEST_CASE("a pure cycle's class is fixed by its color sum") {
    ColoredQuiver c = pure_cycle(2, {1, 1, 1, 1});
    CHECK(check_Qmpq(c, std::make_pair(2, 2)).member);
    CHECK_FALSE(check_Qmpq(c, std::make_pair(3, 1)).member);
    CHECK(check_Qmpq(pure_cycle(2, {0, 1, 1, 0}), std::make_pair(3, 1)).member);
}

TEST_CASE("check_Qmpq reports the failing condition") {
    CHECK(check_Qmpq(build_line_quiver(4, 2)).failed == "a");
    ColoredQuiver split(1, 4);
    split.set_pair(0, 1, 0, 2);
    split.set_pair(2, 3, 0);
    CHECK(check_Qmpq(split).failed == "connected");
    ColoredQuiver bad(1, 2);
    bad.set_multiplicity(0, 1, 0, 1);
    CHECK(check_Qmpq(bad).failed == "valid");
    ColoredQuiver triple(2, 2);
    triple.set_pair(0, 1, 0, 3);
    CHECK_FALSE(check_Qmpq(triple).member);
}

TEST_CASE("clique splits and almost-extremal cliques") {
    ColoredQuiver line = build_line_quiver(4, 1);
    auto split = vertex_clique_split(line, 1);
    REQUIRE(split);
    CHECK(split->z == 2);
    std::vector<std::vector<Vertex>> parts{split->first, split->second};
    std::sort(parts.begin(), parts.end());
    CHECK(parts == std::vector<std::vector<Vertex>>{{0, 1}, {1, 2}});
    CHECK_FALSE(find_almost_extremal_clique(line, {0, 1, 2, 3}));

    // Triangle {0, 1, 2} with the tail 2 - 3 - 4.
    ColoredQuiver tail(1, 5);
    tail.set_pair(0, 1, 0);
    tail.set_pair(1, 2, 0);
    tail.set_pair(2, 0, 0);
    tail.set_pair(2, 3, 0);
    tail.set_pair(3, 4, 0);
    auto clique = find_almost_extremal_clique(tail, {0, 1, 2, 3, 4});
    REQUIRE(clique);
    CHECK(*clique == std::vector<Vertex>{0, 1, 2});
    CHECK_THROWS_AS(vertex_clique_split(ColoredQuiver(1, 2), 0), std::invalid_argument);
}

TEST_CASE("property: mutation walks stay inside their class and certificates balance") {
    gen::Rng rng(31);
    for (int t = 0; t < 600; ++t) {
        int m = gen::uniform(rng, 1, 3), p = gen::uniform(rng, 1, 4), q = gen::uniform(rng, 1, 4);
        ColoredQuiver member = gen::random_walk(rng, build_A_tilde(p, q, m), gen::uniform(rng, 0, 25));
        member = relabel(member, gen::permutation(rng, member.n()));
        ClassVerdict v = check_Qmpq(member, std::make_pair(p, q));
        REQUIRE(v.member);
        const ClassCertificate& c = *v.certificate;
        CHECK(c.p == p);
        CHECK(c.q == q);
        CHECK(c.p + c.q == member.n());
        if (c.cycle.l > 2) {
            CHECK(c.cycle.h == c.cycle.l + c.x_p - p);
            CHECK(c.cycle.h == q - c.x_q);
        }
        int wp = 0, wq = 0;
        for (const Peripheral& per : c.peripherals) (per.tag == Tag::Wp ? wp : wq) += per.n_w;
        CHECK(wp == c.x_p);
        CHECK(wq == c.x_q);
        CHECK_FALSE(check_Qmn(member).member);

        ColoredQuiver lin = gen::random_walk(rng, gen::random_line(rng, gen::uniform(rng, 2, 7), m),
                                             gen::uniform(rng, 0, 25));
        REQUIRE(check_Qmn(lin).member);
        CHECK_FALSE(check_Qmpq(lin).member);
    }
}
