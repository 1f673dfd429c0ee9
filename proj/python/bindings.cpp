#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amplitile/chords.hpp"
#include "amplitile/cluster.hpp"
#include "amplitile/facets.hpp"
#include "amplitile/geometry.hpp"

namespace py = pybind11;
using namespace amplitile;
using json = nlohmann::json;

// structured results cross the boundary as JSON text; the Python side decodes them
namespace {

std::string dump(const json& j) { return j.dump(); }

RecipePtr recipe_of(const std::string& s) {
    auto j = json::parse(s);
    if (j.contains("chords")) return recipe_from_chord_diagram(chord_diagram_from_json(j));
    return recipe_from_json(j);
}

std::string matrix_text(const Matrix& M) {
    json j = json::array();
    for (int i = 0; i < M.rows; ++i) {
        json row = json::array();
        for (int c = 0; c < M.cols; ++c) row.push_back(M(i, c).get_str());
        j.push_back(row);
    }
    return j.dump();
}

}  // namespace

PYBIND11_MODULE(_amplitile, m) {
    m.doc() = "exact BCFW tile machinery";

    py::register_exception<ChordError>(m, "ChordError", PyExc_ValueError);

    m.def("narayana_count", &narayana_count, py::arg("n"), py::arg("k"));
    m.def("enumerate_chord_diagrams", [](int n, int k) {
        json out = json::array();
        for (auto& D : enumerate_chord_diagrams(n, k)) out.push_back(to_json(D));
        return dump(out);
    });
    m.def("example", [](const std::string& name) {
        if (name == "six-chord") return dump(to_json(example_diagram_six_chord()));
        if (name == "mixed") return dump(to_json(example_recipe_mixed()));
        throw py::value_error("unknown example " + name);
    });
    m.def("recipe_from_chords", [](const std::string& d) {
        return dump(to_json(recipe_from_chord_diagram(chord_diagram_from_json(json::parse(d)))));
    });

    m.def("cell", [](const std::string& src) {
        auto G = cell_from_recipe(recipe_of(src));
        json j;
        j["faces"] = face_count(G);
        j["reduced"] = is_reduced(G);
        j["dimension"] = dimension(G);
        j["window"] = trip_permutation(G).affine_window();
        j["graph"] = to_json(G);
        return dump(j);
    });
    m.def("cell_from_window", [](const std::vector<int>& w) {
        auto G = cell_from_decorated_permutation(w);
        json j;
        j["reduced"] = is_reduced(G);
        j["dimension"] = dimension(G);
        j["graph"] = to_json(G);
        return dump(j);
    });

    m.def("vandermonde_z", [](int n, int k) { return matrix_text(vandermonde_Z(n, k)); });

    m.def("promote", [](const std::string& chain, const std::vector<int>& B, const std::string& side) {
        if (B.size() != 5) throw py::value_error("butterfly needs five markers");
        if (side != "L" && side != "R") throw py::value_error("side must be L or R");
        Butterfly b{B[0], B[1], B[2], B[3], B[4]};
        auto pr = promote(parse_chain(chain), b, side == "L" ? Side::L : Side::R);
        return to_string(pr.stripped);
    });

    m.def("domino_table", [](const std::string& d) {
        auto D = chord_diagram_from_json(json::parse(d));
        auto dom = domino_variables(D);
        json out = json::array();
        for (int i = 1; i <= D.k(); ++i) {
            json row = json::array();
            for (int z = 0; z < 5; ++z) row.push_back(to_string(dom.table[i][z]));
            out.push_back(row);
        }
        return dump(out);
    });
    m.def("coordinate_functionaries", [](const std::string& src) {
        auto ft = coordinate_functionaries(recipe_of(src));
        json out = json::array();
        for (size_t i = 1; i < ft.size(); ++i) {
            json row = json::array();
            for (int z = 0; z < 5; ++z) row.push_back(to_string(ft[i][z]));
            out.push_back(row);
        }
        return dump(out);
    });

    m.def("tile_seed", [](const std::string& d, uint64_t seed) {
        StandardTile t(chord_diagram_from_json(json::parse(d)), {}, seed);
        return dump(to_json(build_tile_seed(t)));
    }, py::arg("diagram"), py::arg("seed") = 1);

    m.def("facets", [](const std::string& src) {
        auto j = json::parse(src);
        std::vector<FacetDescriptor> fs =
            j.contains("chords") ? standard_facets(chord_diagram_from_json(j)) : recipe_facets(recipe_from_json(j));
        json out = json::array();
        for (auto& f : fs) out.push_back(to_json(f));
        return dump(out);
    });

    m.def("verify_spurion", [](int trials, uint64_t seed) {
        py::gil_scoped_release nogil;
        Rng rng(seed);
        auto rep = verify_spurion(vandermonde_Z(9, 2), trials, rng);
        auto j = to_json(rep);
        j["ok"] = rep.ok();
        return dump(j);
    }, py::arg("trials") = 20, py::arg("seed") = 1);

    m.def("check_catalog", [](int trials, uint64_t seed) {
        py::gil_scoped_release nogil;
        Rng rng(seed);
        auto rep = check_catalog(load_catalog(), trials, rng);
        auto j = to_json(rep);
        j["ok"] = rep.ok();
        return dump(j);
    }, py::arg("trials") = 1, py::arg("seed") = 1);

    m.def("toy_forms", [](const std::string& x, const std::string& y) {
        Q X(x), Y(y);
        X.canonicalize();
        Y.canonicalize();
        const Point2 v1{0, 0}, v2{2, 0}, v3{1, 2}, v4{0, 1};
        return std::vector<std::string>{polygon_form({v1, v2, v3, v4}, X, Y).get_str(),
                                        triangle_form(v1, v2, v4, X, Y).get_str(),
                                        triangle_form(v2, v3, v4, X, Y).get_str()};
    });
}
