#pragma once
#include <array>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace amplitile {

struct Chord {
    int a, b, c, d;
    bool operator==(const Chord&) const = default;
};

struct ChordDiagram {
    std::vector<int> markers;  // sorted, contains n
    std::vector<Chord> chords;  // index i holds D_{i+1}
    int n() const { return markers.back(); }
    int k() const { return int(chords.size()); }
};

struct ChordError : std::runtime_error {
    std::string kind;
    ChordError(std::string k, const std::string& msg) : std::runtime_error(msg), kind(std::move(k)) {}
};

ChordDiagram validate_chord_diagram(std::vector<int> markers, std::vector<Chord> chords);
ChordDiagram full_diagram(int n, std::vector<Chord> chords);
std::vector<ChordDiagram> enumerate_chord_diagrams(int n, int k);
// (1/(k+1)) C(n-4,k) C(n-3,k)
long long narayana_count(int n, int k);

// relations of D_i towards D_j (1-based labels): "parent" means D_i is the parent of D_j
std::set<std::string> classify_pair(const ChordDiagram& D, int i, int j);
bool is_descendant(const Chord& below, const Chord& above);
int parent_of(const ChordDiagram& D, int i);  // 0 if top
bool has_sticky_child(const ChordDiagram& D, int i);
bool has_same_end_child(const ChordDiagram& D, int i);
bool starts_where_another_ends(const ChordDiagram& D, int i);
bool has_sticky_same_end_parent(const ChordDiagram& D, int i);

// labels of chords kept by each side; markers explicit
struct SubDiagram {
    ChordDiagram diagram;
    std::vector<int> labels;  // original 1-based labels of kept chords
};
std::pair<SubDiagram, SubDiagram> subdiagrams(const ChordDiagram& D);

struct StepTuple {
    std::array<int, 5> B{};  // a,b,c,d,n
    std::vector<int> pre;
    int cyc = 0;
    int refl = 0;
};

struct Recipe;
using RecipePtr = std::shared_ptr<const Recipe>;

struct Recipe {
    std::vector<int> markers;  // N, sorted
    RecipePtr left, right;      // null for trivial
    StepTuple step;
    int label = 0;              // global step index, 1-based, 0 if trivial
    bool trivial() const { return label == 0; }
};

RecipePtr trivial_recipe(std::vector<int> markers);
// Builds the node and checks N_L, N_R against the children.
RecipePtr make_step(RecipePtr left, RecipePtr right, StepTuple st);
// Relabels steps in sequence order (left subtree, right subtree, node).
RecipePtr relabel_steps(const RecipePtr& r);
int num_steps(const RecipePtr& r);
// step nodes by label (index 0 unused)
std::vector<const Recipe*> steps_by_label(const RecipePtr& r);

RecipePtr recipe_from_chord_diagram(const ChordDiagram& D);
// flat sequence of step-tuples; children found among earlier results by marker containment
RecipePtr recipe_from_steps(const std::vector<StepTuple>& steps);
RecipePtr example_recipe_mixed();  // the 4-step recipe with shifts and reflections used in the tests
ChordDiagram example_diagram_six_chord();  // the 6-chord diagram on 15 markers

// index maps induced by cyc and refl on a sorted marker set
int cyc_index(const std::vector<int>& N, int x, int times = 1);
int refl_index(const std::vector<int>& N, int x);

using Quintuple = std::array<int, 5>;
std::vector<Quintuple> generalized_chords(const RecipePtr& r);  // index 0 = step 1

nlohmann::json to_json(const ChordDiagram& D);
ChordDiagram chord_diagram_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RecipePtr& r);
RecipePtr recipe_from_json(const nlohmann::json& j);

}  // namespace amplitile
