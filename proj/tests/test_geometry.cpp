#include <doctest.h>

#include "amplitile/geometry.hpp"

using namespace amplitile;

namespace {

Q quad_ref(const Q& x, const Q& y) { return (y - 4 * x - 4) / (x * y * (y - x - 1) * (2 * x + y - 4)); }
Q tri124_ref(const Q& x, const Q& y) { return Q(2) / (x * y * (2 - x - 2 * y)); }
Q tri234_ref(const Q& x, const Q& y) { return Q(9) / ((1 + x - y) * (4 - 2 * x - y) * (2 - x - 2 * y)); }

const Point2 v1{0, 0}, v2{2, 0}, v3{1, 2}, v4{0, 1};

}  // namespace

TEST_CASE("toy polygon forms") {
    Rng rng(17);
    for (int t = 0; t < 20; ++t) {
        Q x = rng.rational(7), y = rng.rational(7);
        if (sgn(x * y * (y - x - 1) * (2 * x + y - 4) * (2 - x - 2 * y) * (1 + x - y) * (4 - 2 * x - y)) == 0) continue;
        Q t124 = triangle_form(v1, v2, v4, x, y), t234 = triangle_form(v2, v3, v4, x, y);
        Q quad = polygon_form({v1, v2, v3, v4}, x, y);  // fan over the diagonal 13
        CHECK(quad == t124 + t234);
        CHECK(polygon_form({v2, v3, v4, v1}, x, y) == quad);
        // the reference formulas agree up to orientation; the Delta_124 one uses the opposite orientation
        CHECK(t124 == tri124_ref(x, y));
        CHECK(t234 == -tri234_ref(x, y));
        CHECK(quad == -quad_ref(x, y));
    }
    // on the diagonal 2 - x - 2y = 0 the triangles have a pole, the quadrilateral does not
    Q x = Q(1, 3), y = (2 - x) / 2;
    CHECK_THROWS(triangle_form(v1, v2, v4, x, y));
    CHECK_THROWS(polygon_form({v2, v3, v4, v1}, x, y));
    CHECK(polygon_form({v1, v2, v3, v4}, x, y) == -quad_ref(x, y));
}

TEST_CASE("canonical form: two formulas and chart independence") {
    Rng rng(23);
    for (auto D : {enumerate_chord_diagrams(5, 1)[0], enumerate_chord_diagrams(7, 2)[1], enumerate_chord_diagrams(8, 3)[4]}) {
        StandardTile t(D);
        auto cm = coordinate_monomials(t, rng);
        auto sm = scaling_map(D, t.dom, cm);
        auto tc = tile_coordinates(t, sm);
        for (int s = 0; s < 3; ++s) {
            auto P = t.sample(rng);
            auto charts = nonsingular_charts(P.Y);
            REQUIRE(charts.size() >= 2);
            Q ref = canonical_form_value(t, tc, P.Y, charts[0], FormMode::Coord);
            CHECK(sgn(ref) != 0);
            CHECK(abs(canonical_form_value(t, tc, P.Y, charts[0], FormMode::Tile)) == abs(ref));
            for (size_t c : {size_t(1), charts.size() / 2, charts.size() - 1}) {
                CHECK(abs(canonical_form_value(t, tc, P.Y, charts[c], FormMode::Coord)) == abs(ref));
                CHECK(abs(canonical_form_value(t, tc, P.Y, charts[c], FormMode::Tile)) == abs(ref));
            }
        }
    }
}

TEST_CASE("k = 1, n = 5 form") {
    auto D = enumerate_chord_diagrams(5, 1)[0];
    StandardTile t(D);
    Rng rng(2);
    auto cm = coordinate_monomials(t, rng);
    auto tc = tile_coordinates(t, scaling_map(D, t.dom, cm));
    for (int s = 0; s < 5; ++s) {
        auto P = t.sample(rng);
        CHECK(sgn(form_in_chart(t, tc, P.Y, {0}, FormMode::Coord)) != 0);
    }
    CHECK_THROWS(form_in_chart(t, tc, Matrix(1, 5), {0}, FormMode::Coord));
}

TEST_CASE("spurion cell") {
    auto sp = spurion();
    auto cat = load_catalog();
    auto row28 = cat.tiles[cat.spurion - 1];
    REQUIRE(row28.id == 28);
    CHECK(shift_window(row28.window, 1) == sp.window);
    CHECK(shift_window(shift_window(row28.window, 4), 5) == row28.window);
    CHECK(dimension(sp.G) == 8);
    std::vector<std::vector<Q>> node_sets = {{1, 2, 3, 4, 5, 6, 7, 8, 9},
                                             {Q(1, 2), 1, 2, 3, 5, 8, 13, 21, 34},
                                             {-4, -3, -1, 0, 1, 2, 5, 6, 10}};
    Rng rng(31);
    for (auto& nodes : node_sets) {
        auto Z = vandermonde(nodes, 6);
        REQUIRE(all_maximal_minors_positive(Z));
        auto rep = verify_spurion(Z, 100, rng);
        INFO(to_json(rep).dump());
        CHECK(rep.ok());
        for (int i = 0; i < 3; ++i) CHECK((rep.s_positive[i] == 0 || rep.s_negative[i] == 0));
    }
    // the catalog row itself carries the rotated pattern
    auto G = cell_from_decorated_permutation(row28.window);
    auto C = sample_point(G, rng);
    CHECK(column_configuration(C) == parse_configuration("(3,4,5)(6,7,8)(9,1,2)"));
}

TEST_CASE("catalog") {
    auto cat = load_catalog();
    CHECK(cat.tiles.size() == 50);
    CHECK(cat.swap_in.size() == 5);
    CHECK(cat.swap_out == std::vector<int>{28, 34, 35, 38, 46});
    CHECK(cat.tiles[0].window == std::vector<int>{1, 4, 5, 6, 7, 11, 12, 8, 9});
    CHECK(parse_configuration(cat.tiles[0].config) == parse_configuration("(2)(3)(4)(5)(6)(7)"));
    CHECK(parse_configuration(cat.swap_in[0].config) == Configuration{{2}, {3, 4, 5}, {6, 7, 8}, {9}});
    for (auto& r : cat.tiles) CHECK(average_displacement_times_n(r.window) == 18);
    Rng rng(5);
    auto rep = check_catalog(cat, 2, rng);
    INFO(to_json(rep).dump());
    CHECK(rep.ok());
    CHECK(rep.rows == 55);
    CHECK_THROWS(parse_configuration("(1,2"));
    CHECK_THROWS(load_catalog("/nonexistent/catalog.json"));
}

TEST_CASE("tiling sign checks") {
    auto cat = load_catalog();
    Rng rng(9);
    auto rep = tiling_sign_checks(cat, vandermonde_Z(9, 2), 6, rng);
    INFO(to_json(rep).dump());
    CHECK(rep.ok());
    CHECK_FALSE(rep.tested_ids.empty());
    CHECK(rep.standard_tiles == 50);
}
