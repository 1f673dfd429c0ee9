#include <doctest.h>

#include <numeric>

#include "amplitile/plabic.hpp"

using namespace amplitile;

namespace {

// Plücker vector of C vs Delta from matchings: equal up to one scalar, zero pattern identical
bool plucker_consistent(const Matrix& C, const std::map<uint64_t, Q>& D) {
    int k = C.rows, n = C.cols;
    std::vector<int> I(k);
    std::iota(I.begin(), I.end(), 0);
    Q ratio = 0;
    while (true) {
        uint64_t m = 0;
        for (int x : I) m |= uint64_t(1) << x;
        Q pc = minor_cols(C, I);
        auto it = D.find(m);
        Q dv = it == D.end() ? Q(0) : it->second;
        if ((sgn(pc) == 0) != (sgn(dv) == 0)) return false;
        if (sgn(dv) != 0) {
            Q r = pc / dv;
            if (sgn(r) <= 0) return false;
            if (ratio == 0) ratio = r;
            else if (r != ratio) return false;
        }
        int i = k - 1;
        while (i >= 0 && I[i] == n - k + i) --i;
        if (i < 0) break;
        ++I[i];
        for (int j = i + 1; j < k; ++j) I[j] = I[j - 1] + 1;
    }
    return true;
}

}  // namespace

TEST_CASE("k=1 butterfly cell") {
    auto G = bcfw_product(trivial_graph({1, 2, 5}), trivial_graph({2, 3, 4, 5}), {1, 2, 3, 4, 5}, 1);
    CHECK(euler_check(G));
    CHECK(is_reduced(G));
    CHECK(dimension(G) == 4);
    auto P = positroid(G);
    CHECK(P.size() == 5);
    for (int t = 0; t < 12; ++t) CHECK(G.edge_by_name(butterfly_edge(1, t + 1)) >= 0);
    EdgeWeights ones;
    for (auto& nm : G.edge_names()) ones[nm] = 1;
    auto T = matchings(G);
    auto C = sample_point(G, T, ones);
    for (int j = 0; j < 5; ++j) CHECK(sgn(C(0, j)) > 0);
}

TEST_CASE("k=1 cell on seven markers") {
    auto G = bcfw_product(trivial_graph({1, 2, 3, 4, 7}), trivial_graph({4, 5, 6, 7}), {3, 4, 5, 6, 7}, 1);
    auto T = matchings(G);
    auto P = positroid(T);
    std::vector<std::vector<int>> got;
    for (auto m : P) got.push_back(mask_to_markers(m, T.markers));
    CHECK(got == std::vector<std::vector<int>>{{3}, {4}, {5}, {6}, {7}});
    CHECK(coindependent(T, {1, 2, 3, 4}));
    CHECK(!coindependent(T, {3, 4, 5, 6, 7}));
    auto T0 = matchings(trivial_graph({1, 2, 3}));
    CHECK(T0.k == 0);
    CHECK(coindependent(T0, {1, 2, 3}));
}

TEST_CASE("standard cells: dimension, positivity, trips") {
    Rng rng(11);
    for (int n = 5; n <= 8; ++n)
        for (int k = 1; k <= n - 4; ++k)
            for (auto& D : enumerate_chord_diagrams(n, k)) {
                auto G = cell_from_chord_diagram(D);
                REQUIRE(euler_check(G));
                CHECK(dimension(G) == 4 * k);
                CHECK(is_reduced(G));
                auto T = matchings(G);
                CHECK(T.k == k);
                auto D0 = boundary_measurement(G, T, random_weights(G, rng));
                auto C = matrix_from_plucker(D0, T.k, n);
                CHECK(plucker_consistent(C, D0));
                CHECK(trip_permutation(G) == permutation_of_matrix(C, G.markers));
            }
}

TEST_CASE("graph operations agree with matrix operations") {
    Rng rng(5);
    auto G = cell_from_chord_diagram(full_diagram(8, {{1, 2, 6, 7}, {3, 4, 5, 6}}));
    auto C = sample_point(G, rng);
    auto Pc = positroid(graph_cyc(G));
    auto Pr = positroid(graph_refl(G));
    auto bases = [](const Matrix& M) {
        Positroid out;
        int n = M.cols, k = M.rows;
        for (uint64_t m = 0; m < (uint64_t(1) << n); ++m) {
            if (__builtin_popcountll(m) != k) continue;
            std::vector<int> I;
            for (int i = 0; i < n; ++i)
                if (m >> i & 1) I.push_back(i);
            if (sgn(minor_cols(M, I)) != 0) out.push_back(m);
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    CHECK(Pc == bases(cyc(C)));
    CHECK(Pr == bases(refl(C)));
    auto G8 = G;
    for (int i = 0; i < 8; ++i) G8 = graph_cyc(G8);
    CHECK(trip_permutation(G8) == trip_permutation(G));
    CHECK(trip_permutation(graph_refl(graph_refl(G))) == trip_permutation(G));
}

TEST_CASE("pre inserts black lollipops") {
    auto G = graph_pre(trivial_graph({9, 10, 11, 12, 13, 15}), {14});
    CHECK(G.markers.back() == 15);
    auto P = trip_permutation(G);
    CHECK(P.pi.at(14) == 14);
    CHECK(P.fixed_color.at(14) == 1);
}

TEST_CASE("recipe cell with shifts and reflections") {
    auto G = cell_from_recipe(example_recipe_mixed());
    CHECK(G.markers.size() == 12);
    CHECK(dimension(G) == 16);
    CHECK(is_reduced(G));
    CHECK(matchings(G).k == 4);
}

TEST_CASE("bridge decomposition matches its permutation") {
    Rng rng(17);
    std::vector<std::vector<int>> ws = {{2, 6, 4, 5, 9, 7, 8, 12, 10}, {1, 4, 5, 6, 7, 11, 12, 8, 9}, {3, 4, 5, 6, 7, 8, 9, 10, 11}};
    for (auto& w : ws) {
        auto G = cell_from_decorated_permutation(w);
        CHECK(is_reduced(G));
        CHECK(trip_permutation(G).affine_window() == w);
        auto C = sample_point(G, rng);
        CHECK(permutation_of_matrix(C, G.markers).affine_window() == w);
    }
    CHECK(dimension(cell_from_decorated_permutation(ws[0])) == 8);
    CHECK(positroid(cell_from_decorated_permutation(ws[2])).size() == 36);
    CHECK_THROWS(cell_from_decorated_permutation({3, 1, 2}));
}

TEST_CASE("edge deletion at the top butterfly") {
    auto D = example_diagram_six_chord();
    auto G = cell_from_chord_diagram(D);
    auto H = delete_edge(G, butterfly_edge(6, 10));
    CHECK(is_reduced(H));
    CHECK(dimension(H) == dimension(G) - 1);
    CHECK_THROWS(delete_edge(G, "nope"));
}
