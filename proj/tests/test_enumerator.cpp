#include "doctest.h"

#include <set>
#include <stdexcept>

#include "generators.hpp"
#include "oracles.hpp"
#include "qmut/classifier.hpp"
#include "qmut/enumerator.hpp"
#include "reference_quivers.hpp"

using namespace qmut;

namespace {

struct ClassSize {
    int m, p, q;
    std::size_t size;
};

// Derived with oracle::class_keys (reference mutation, exhaustive keys); frozen here.
const std::vector<ClassSize> kGridSizes = {
    {1, 1, 1, 1}, {1, 2, 1, 2}, {1, 2, 2, 4}, {1, 3, 1, 5}, {2, 1, 1, 2},
    {2, 2, 1, 5}, {2, 3, 1, 22}, {2, 2, 2, 15}, {3, 2, 1, 10},
};

// Derived with enumerate_class; frozen here.
const std::vector<ClassSize> kLargerSizes = {
    {1, 3, 2, 12}, {1, 4, 4, 172}, {2, 3, 3, 226}, {3, 3, 2, 308}, {2, 4, 2, 415}, {3, 2, 2, 32},
};

}  // namespace

TEST_CASE("class sizes on the grid match the reference closure") {
    for (const auto& [m, p, q, size] : kGridSizes) {
        CAPTURE(m);
        CAPTURE(p);
        CAPTURE(q);
        MutationClass cls = enumerate_class(build_A_tilde(p, q, m));
        CHECK(cls.exhausted);
        CHECK(cls.size() == size);
        CHECK(oracle::class_keys(build_A_tilde(p, q, m)).size() == size);
        for (const auto& [digest, member] : cls.members) {
            CHECK(member.form.digest == digest);
            CHECK(canonical_form(member.representative) == member.form);
        }
    }
}

TEST_CASE("larger class sizes") {
    for (const auto& [m, p, q, size] : kLargerSizes) {
        CAPTURE(m);
        CAPTURE(p);
        CAPTURE(q);
        CHECK(enumerate_class(build_A_tilde(p, q, m)).size() == size);
    }
}

TEST_CASE("the A~(3,1) class for m = 2 holds every drawn member") {
    MutationClass cls = enumerate_class(build_A_tilde(3, 1, 2));
    REQUIRE(cls.size() == 22);
    std::set<std::string> drawn;
    for (const ColoredQuiver& q : fixtures::a31_drawn_members()) {
        CHECK(cls.contains(q));
        drawn.insert(canonical_form(q).digest);
    }
    CHECK(drawn.size() == 22);
}

TEST_CASE("enumeration does not depend on the seed or the thread count") {
    gen::Rng rng(51);
    MutationClass base = enumerate_class(build_A_tilde(2, 2, 2));
    for (int t = 0; t < 10; ++t) {
        ColoredQuiver seed = relabel(gen::random_walk(rng, build_A_tilde(2, 2, 2), 10), gen::permutation(rng, 4));
        MutationClass other = enumerate_class(seed);
        REQUIRE(other.size() == base.size());
        for (const auto& [d, member] : base.members) CHECK(other.members.count(d) == 1);
    }
    EnumerationOptions threaded;
    threaded.threads = 4;
    MutationClass par = enumerate_class(build_A_tilde(2, 3, 3), threaded);
    MutationClass seq = enumerate_class(build_A_tilde(2, 3, 3));
    CHECK(par.size() == seq.size());
    CHECK(par.edges == seq.edges);
    for (const auto& [d, member] : seq.members) CHECK(par.members.at(d).depth == member.depth);
}

TEST_CASE("enumeration is closed under mutation and edges are consistent") {
    MutationClass cls = enumerate_class(build_A_tilde(2, 2, 2));
    for (const auto& [d, member] : cls.members)
        for (Vertex v = 0; v < member.representative.n(); ++v)
            CHECK(cls.contains(mutate(member.representative, v)));
    CHECK(cls.edges.size() == cls.size() * 4);
    for (const ClassEdge& e : cls.edges)
        CHECK(canonical_form(mutate(cls.members.at(e.from).representative, e.vertex)).digest == e.to);
    CHECK(cls.members.at(cls.seed_digest).depth == 0);
}

TEST_CASE("limits stop the search and mark it unexhausted") {
    EnumerationOptions small;
    small.max_states = 5;
    MutationClass part = enumerate_class(build_A_tilde(2, 3, 3), small);
    CHECK_FALSE(part.exhausted);
    CHECK(part.size() <= 5);

    EnumerationOptions shallow;
    shallow.max_depth = 1;
    MutationClass near = enumerate_class(build_A_tilde(2, 3, 3), shallow);
    CHECK_FALSE(near.exhausted);
    for (const auto& [d, member] : near.members) CHECK(member.depth <= 1);

    EnumerationOptions no_edges;
    no_edges.record_edges = false;
    CHECK(enumerate_class(build_A_tilde(3, 1, 2), no_edges).edges.empty());
}

TEST_CASE("the structural generator reproduces the closure") {
    for (const auto& [m, p, q, size] : kGridSizes) {
        CAPTURE(m);
        CAPTURE(p);
        CAPTURE(q);
        auto generated = generate_all_members(p, q, m);
        MutationClass cls = enumerate_class(build_A_tilde(p, q, m));
        REQUIRE(generated.size() == size);
        for (const auto& [d, member] : cls.members) CHECK(generated.count(d) == 1);
        TheoremReport report = verify_theorem_A(p, q, m);
        CHECK(report.agrees());
        CHECK(report.bfs_size == size);
        CHECK(report.structural_size == size);
    }
}

TEST_CASE("classes with the same vertex count stay apart") {
    auto a = generate_all_members(2, 2, 2);
    auto b = generate_all_members(3, 1, 2);
    for (const auto& [d, q] : a) CHECK(b.count(d) == 0);
    CHECK(check_Qmpq(a.begin()->second, std::make_pair(3, 1)).member == false);
}

TEST_CASE("generation refuses infeasible searches") {
    CHECK(generation_estimate(4, 2) == doctest::Approx(7.0 * 7 * 7 * 7 * 7 * 7));
    CHECK_THROWS_AS(generate_all_members(4, 4, 3), std::length_error);
    CHECK_THROWS_AS(generate_all_members(0, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_all_members(2, 2, 2, 10.0), std::length_error);
}

TEST_CASE("class statistics") {
    MutationClass cls = enumerate_class(build_A_tilde(3, 1, 2));
    ClassStatistics stats = class_statistics(cls, 3, 1);
    CHECK(stats.members == 22);
    CHECK(stats.edges == cls.edges.size());
    CHECK(stats.certificate_failures == 0);
    std::size_t cycles = 0, peripheral = 0, arrows = 0;
    for (const auto& [k, count] : stats.central_cycles) cycles += count;
    for (const auto& [k, count] : stats.peripheral_counts) peripheral += count;
    for (const auto& [k, count] : stats.arrow_counts) arrows += count;
    CHECK(cycles == 22);
    CHECK(peripheral == 22);
    CHECK(arrows == 22);
    CHECK(stats.central_cycles.at({4, 1}) >= 1);
    int max_depth = 0;
    for (const auto& [d, member] : cls.members) max_depth = std::max(max_depth, member.depth);
    CHECK(stats.max_depth == max_depth);
}
