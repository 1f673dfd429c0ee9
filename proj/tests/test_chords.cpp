#include <doctest.h>

#include "amplitile/chords.hpp"

using namespace amplitile;

TEST_CASE("validation") {
    auto D = example_diagram_six_chord();
    CHECK(D.k() == 6);
    CHECK(D.chords[2] == Chord{1, 2, 8, 9});
    CHECK(D.chords[5] == Chord{8, 9, 13, 14});
    try {
        full_diagram(5, {{1, 2, 3, 4}, {1, 2, 3, 4}});
        CHECK(false);
    } catch (const ChordError& e) { CHECK(e.kind == "StartClash"); }
    try {
        full_diagram(8, {{1, 2, 4, 5}, {3, 4, 6, 7}});
        CHECK(false);
    } catch (const ChordError& e) { CHECK(e.kind == "Crossing"); }
    CHECK_THROWS_AS(full_diagram(6, {{1, 2, 4, 6}}), ChordError);
}

TEST_CASE("enumeration") {
    auto d5 = enumerate_chord_diagrams(5, 1);
    REQUIRE(d5.size() == 1);
    CHECK(d5[0].chords[0] == Chord{1, 2, 3, 4});
    CHECK(enumerate_chord_diagrams(6, 1).size() == 3);
    for (int n = 4; n <= 9; ++n)
        for (int k = 0; k <= n - 4; ++k) CHECK(enumerate_chord_diagrams(n, k).size() == size_t(narayana_count(n, k)));
    CHECK(narayana_count(15, 6) == 60984);
}

TEST_CASE("terminology") {
    auto D = example_diagram_six_chord();
    CHECK(parent_of(D, 4) == 5);
    CHECK(classify_pair(D, 5, 4).count("parent"));
    CHECK(classify_pair(D, 4, 5).count("same_end"));
    CHECK(classify_pair(D, 1, 2).count("head_to_tail"));
    CHECK(classify_pair(D, 1, 2).count("sibling"));
    CHECK(classify_pair(D, 5, 6).count("sticky"));
    CHECK(classify_pair(D, 3, 6).count("sibling"));
    CHECK(classify_pair(D, 2, 3).count("same_end"));
    CHECK(has_sticky_child(D, 6));
    CHECK(has_sticky_child(D, 5));
    CHECK(has_same_end_child(D, 3));
    CHECK_FALSE(has_same_end_child(D, 6));
    CHECK(has_sticky_same_end_parent(D, 4));
}

TEST_CASE("subdiagrams and recipes") {
    auto D = example_diagram_six_chord();
    auto [L, R] = subdiagrams(D);
    CHECK(L.diagram.markers == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 15});
    CHECK(L.labels == std::vector<int>{1, 2, 3});
    CHECK(R.diagram.markers == std::vector<int>{9, 10, 11, 12, 13, 14, 15});
    CHECK(R.labels == std::vector<int>{4, 5});
    auto r = recipe_from_chord_diagram(D);
    auto steps = steps_by_label(r);
    REQUIRE(steps.size() == 7);
    for (int i = 1; i <= 6; ++i) {
        auto B = steps[i]->step.B;
        CHECK(Chord{B[0], B[1], B[2], B[3]} == D.chords[i - 1]);
    }
    CHECK(steps[6]->step.pre.empty());
    CHECK(steps[6]->step.B[4] == 15);
    // round trip on all small diagrams
    for (int n = 5; n <= 9; ++n)
        for (int k = 0; k <= n - 4; ++k)
            for (auto& E : enumerate_chord_diagrams(n, k)) {
                auto rr = recipe_from_chord_diagram(E);
                auto st = steps_by_label(rr);
                for (int i = 1; i <= k; ++i) {
                    auto B = st[i]->step.B;
                    CHECK(Chord{B[0], B[1], B[2], B[3]} == E.chords[i - 1]);
                }
            }
}

TEST_CASE("generalized chords") {
    auto r = example_recipe_mixed();
    auto g = generalized_chords(r);
    REQUIRE(g.size() == 4);
    CHECK(g[0] == Quintuple{6, 7, 8, 9, 3});
    CHECK(g[1] == Quintuple{4, 5, 8, 9, 3});
    CHECK(g[2] == Quintuple{3, 2, 1, 12, 10});
    CHECK(g[3] == Quintuple{4, 3, 11, 10, 9});
    auto D = example_diagram_six_chord();
    auto gs = generalized_chords(recipe_from_chord_diagram(D));
    for (int i = 0; i < 6; ++i) CHECK(gs[i] == Quintuple{D.chords[i].a, D.chords[i].b, D.chords[i].c, D.chords[i].d, 15});
}
