#include <doctest.h>

#include <set>

#include "amplitile/cluster.hpp"
#include "amplitile/facets.hpp"

using namespace amplitile;

TEST_CASE("standard facets of the six-chord diagram") {
    auto D = example_diagram_six_chord();
    auto fs = standard_facets(D);
    CHECK(fs.size() == 21);
    int faces = face_count(cell_from_chord_diagram(D));
    std::set<std::string> seen;
    for (auto& f : fs) {
        INFO(f.variable);
        CHECK(face_count(f.graph) == faces - 1);
        CHECK(is_reduced(f.graph));
        seen.insert(f.edge);
    }
    CHECK(seen.size() == 21);
}

TEST_CASE("reducedness of top-step deletions") {
    int converse = 0;
    for (int n = 5; n <= 8; ++n)
        for (int k = 1; k <= n - 4; ++k)
            for (auto& D : enumerate_chord_diagrams(n, k)) {
                auto G = cell_from_chord_diagram(D);
                for (int z = 0; z < 5; ++z) {
                    bool red = is_reduced(delete_edge(G, butterfly_edge(k, kDesignatedEdge[z])));
                    bool pred = predicted_reduced(D, k, z);
                    if (z == kAlpha) {
                        CHECK((!pred || red));
                        converse += red && !pred;
                    } else {
                        CHECK(red == pred);
                    }
                }
            }
    MESSAGE("alpha deletions reduced despite a sticky child: " << converse);
}

TEST_CASE("condensability of the mixed recipe") {
    auto r = example_recipe_mixed();
    std::set<std::string> excluded;
    for (int i = 1; i <= 4; ++i)
        for (int z = 0; z < 5; ++z)
            if (!condensable(r, i, z)) excluded.insert(letter_name(z) + std::to_string(i));
    CHECK(excluded == std::set<std::string>{"delta2", "eps2", "beta4"});
    CHECK_THROWS_AS(condense(r, 2, kDelta), std::invalid_argument);
    for (int i = 1; i <= 4; ++i) CHECK(condensable(r, i, kGamma));
    auto fs = recipe_facets(r);
    CHECK(fs.size() == 17);
    Rng rng(7);
    auto Z = vandermonde_Z(12, 4);
    for (auto& f : fs) {
        auto rep = verify_facet(r, f, Z, 3, rng);
        INFO(f.variable << " " << to_json(rep).dump());
        CHECK(rep.ok());
    }
}

TEST_CASE("standard condensations match the Mut/AFacet split") {
    for (auto D : {example_diagram_six_chord(), enumerate_chord_diagrams(9, 4)[5], enumerate_chord_diagrams(9, 3)[17]}) {
        auto r = recipe_from_chord_diagram(D);
        auto dom = domino_variables(D);
        auto cls = classify_variables(D, dom);
        int rigid = 0;
        for (int i = 1; i <= D.k(); ++i)
            for (int z = 0; z < 5; ++z) {
                bool alias = z == kBeta && has_sticky_same_end_parent(D, i);
                bool mut = !cls.frozen[dom.id[i][z]];
                if (!condensable(r, i, z)) {
                    CHECK(mut);
                    CHECK_FALSE(alias);
                    continue;
                }
                auto c = condense(r, i, z);
                CHECK(c.rigid == !alias);
                if (!c.rigid) CHECK(c.witness > i);
                rigid += c.rigid;
            }
        CHECK(rigid == int(cls.afacet.size()));
    }
}

TEST_CASE("k = 1 facets") {
    auto D = enumerate_chord_diagrams(7, 1)[3];
    auto fs = standard_facets(D);
    CHECK(fs.size() == 5);
    auto r = recipe_from_chord_diagram(D);
    Rng rng(1);
    auto Z = vandermonde_Z(7, 1);
    for (auto& f : fs) {
        CHECK(is_reduced(f.graph));
        CHECK(condense(r, 1, f.letter).rigid);
        auto rep = verify_facet(r, f, Z, 4, rng);
        CHECK(rep.ok());
    }
    // deleting x12 kills <abcd>
    auto& e = fs[kEps];
    CHECK(e.edge == butterfly_edge(1, 12));
    auto [a, b, c, d] = std::array<int, 4>{D.chords[0].a, D.chords[0].b, D.chords[0].c, D.chords[0].d};
    CHECK(e.cutting == symbol(a, b, c, d));
}

TEST_CASE("standard facets verify on the six-chord tile") {
    auto D = example_diagram_six_chord();
    auto r = recipe_from_chord_diagram(D);
    Rng rng(3);
    auto Z = vandermonde_Z(15, 6);
    for (auto& f : standard_facets(D)) {
        auto rep = verify_facet(r, f, Z, f.variable == "alpha1" ? 20 : 2, rng);
        INFO(f.variable << " " << to_json(rep).dump());
        CHECK(rep.ok());
    }
}

TEST_CASE("vanishing of a mutable variable is not isolated") {
    StandardTile t(example_diagram_six_chord());
    auto cls = classify_variables(t.D, t.dom);
    Rng rng(4);
    for (int v : cls.mut) {
        auto [i, z] = t.dom.key[v];
        auto H = delete_edge(t.G, butterfly_edge(i, kDesignatedEdge[z]));
        auto TH = matchings(H);
        for (int s = 0; s < 2; ++s) {
            TwistorPoint P{amplituhedron_map(sample_point(H, TH, random_weights(H, rng)), t.Z), t.Z, t.markers};
            Evaluator ev(P);
            int zeros = 0;
            for (int u = 0; u < t.dom.count(); ++u) zeros += sgn(ev(t.dom.poly[u])) == 0;
            INFO(t.dom.name(v) << " zeros " << zeros);
            if (sgn(ev(t.dom.poly[v])) == 0) CHECK(zeros >= 2);
        }
    }
}
