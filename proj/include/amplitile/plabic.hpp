#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "amplitile/chords.hpp"
#include "amplitile/linalg.hpp"

namespace amplitile {

enum class Color : int { Boundary = 0, Black = 1, White = 2 };

struct PlabicGraph {
    struct Vertex {
        Color color;
        int label = 0;         // marker for boundary vertices
        std::vector<int> rot;  // incident edge ids, clockwise
        bool alive = true;
    };
    struct Edge {
        int u, v;
        std::string name;
        bool alive = true;
        int other(int w) const { return w == u ? v : u; }
    };

    std::vector<int> markers;  // sorted; boundary is clockwise in this order
    std::vector<Vertex> V;
    std::vector<Edge> E;

    int add_vertex(Color c, int label = 0);
    // appends the edge to both rotations (callers reorder when needed)
    int add_edge(int u, int v, std::string name);
    int boundary_vertex(int marker) const;
    int edge_by_name(const std::string& name) const;  // -1 if absent
    void kill_edge(int e);
    void compact();
    int num_edges() const;
    int num_internal() const;
    std::vector<std::string> edge_names() const;
};

PlabicGraph trivial_graph(const std::vector<int>& markers);
// G_L on N_L = {.., a, b, n}, G_R on N_R = {b, .., c, d, n}; butterfly edges named "s<label>.x1" .. "s<label>.x12"
PlabicGraph bcfw_product(const PlabicGraph& GL, const PlabicGraph& GR, const std::array<int, 5>& B, int label);
PlabicGraph graph_cyc(const PlabicGraph& G, int times = 1);
PlabicGraph graph_refl(const PlabicGraph& G);
PlabicGraph graph_pre(const PlabicGraph& G, const std::vector<int>& J);
PlabicGraph cell_from_recipe(const RecipePtr& r);
PlabicGraph cell_from_chord_diagram(const ChordDiagram& D);
std::string butterfly_edge(int label, int x);  // "s<label>.x<x>"

PlabicGraph delete_edge(const PlabicGraph& G, const std::string& name);
// forced-leaf reduction preserving the matching polytope; boundary vertices losing their edge become lollipops
PlabicGraph normalize_leaves(const PlabicGraph& G);

int face_count(const PlabicGraph& G);  // by tracing the rotation system
bool euler_check(const PlabicGraph& G);
int connected_components(const PlabicGraph& G);

struct DecoratedPermutation {
    std::vector<int> markers;
    std::map<int, int> pi;          // marker -> marker
    std::map<int, int> fixed_color;  // for fixed points: 1 loop (black), 2 coloop (white)
    bool operator==(const DecoratedPermutation&) const = default;
    // bounded affine window over positions 1..n: f(i) in [i, i+n]
    std::vector<int> affine_window() const;
};

struct TripData {
    DecoratedPermutation perm;
    bool closed_trip = false;
    bool self_intersection = false;
    bool bad_double_crossing = false;
    bool fixed_point_not_lollipop = false;
};
TripData trips(const PlabicGraph& G);
DecoratedPermutation trip_permutation(const PlabicGraph& G);
bool is_reduced(const PlabicGraph& G);
int dimension(const PlabicGraph& G);  // faces - 1 for a reduced graph

// matrix oracle: pi(i) = first j after i (cyclically) with v_i in span(v_{i+1..j})
DecoratedPermutation permutation_of_matrix(const Matrix& C, const std::vector<int>& markers);

struct MatchingTable {
    std::vector<int> markers;
    int k = -1;
    std::vector<uint64_t> boundary;        // per matching, bitmask over marker positions
    std::vector<std::vector<int>> edges;   // per matching, indices into edge_name
    std::vector<std::string> edge_name;    // edges of the leaf-normalized graph
    size_t size() const { return boundary.size(); }
};
// runs on the leaf-normalized graph
MatchingTable matchings(const PlabicGraph& G, size_t limit = 20000000);

using Positroid = std::vector<uint64_t>;  // sorted basis masks
Positroid positroid(const MatchingTable& T);
Positroid positroid(const PlabicGraph& G);
bool coindependent(const MatchingTable& T, const std::vector<int>& J);
std::vector<int> mask_to_markers(uint64_t m, const std::vector<int>& markers);

using EdgeWeights = std::map<std::string, Q>;
EdgeWeights random_weights(const PlabicGraph& G, Rng& rng, int64_t bound = 9);
// Delta_J over basis masks
std::map<uint64_t, Q> boundary_measurement(const PlabicGraph& G, const MatchingTable& T, const EdgeWeights& w);
// rows from the lexicographically first basis chart, Delta_{I0} normalized to 1
Matrix matrix_from_plucker(const std::map<uint64_t, Q>& delta, int k, int n);
Matrix sample_point(const PlabicGraph& G, const MatchingTable& T, const EdgeWeights& w);
Matrix sample_point(const PlabicGraph& G, Rng& rng);

// bounded affine window f(1..n), i <= f(i) <= i+n
PlabicGraph cell_from_decorated_permutation(const std::vector<int>& window);

nlohmann::json to_json(const PlabicGraph& G);

}  // namespace amplitile
