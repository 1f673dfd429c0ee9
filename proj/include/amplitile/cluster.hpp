#pragma once
#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "amplitile/chords.hpp"
#include "amplitile/plabic.hpp"
#include "amplitile/promote.hpp"

namespace amplitile {

enum Letter : int { kAlpha = 0, kBeta, kGamma, kDelta, kEps };
std::string letter_name(int z);  // "alpha", ..., "eps"

// var index -> exponent
using LaurentMonomial = std::map<int, int>;
void accumulate(LaurentMonomial& into, const LaurentMonomial& m, int times = 1);

// The 5k domino variables of a standard diagram; beta_i of a sticky same-end child shares the id of alpha_parent.
struct DominoVariables {
    DominoTable table;                     // [chord][letter], chord 0 unused
    std::vector<std::array<int, 5>> id;    // [chord][letter] -> unique variable
    std::vector<std::pair<int, int>> key;  // unique variable -> (chord, letter) of its first occurrence
    std::vector<Poly> poly;                // per unique variable
    int count() const { return int(poly.size()); }
    std::string name(int v) const;         // e.g. "gamma3"
};
DominoVariables domino_variables(const ChordDiagram& D);

// exact interior sampling of a standard tile and the data attached to it
struct StandardTile {
    ChordDiagram D;
    RecipePtr recipe;
    PlabicGraph G;
    MatchingTable T;
    Matrix Z;  // n x (k+4)
    std::vector<int> markers;
    DominoVariables dom;
    FunctionaryTable coord;
    std::vector<int> dom_sign;                  // s_x per unique domino variable
    std::vector<std::array<int, 5>> coord_sign;  // so that coord_sign * zeta > 0 on the open tile

    // Z defaults to Vandermonde on 1..n; signs fixed at one sample drawn from `seed`
    explicit StandardTile(const ChordDiagram& D, Matrix Z = {}, uint64_t seed = 1);
    int k() const { return D.k(); }
    int n() const { return D.n(); }
    TwistorPoint image(const EdgeWeights& w) const;
    TwistorPoint sample(Rng& rng) const;
    EdgeWeights unit_weights() const;
};

struct SignedMonomial {
    int sign = 1;
    LaurentMonomial exps;  // over unique domino variables
};
// zeta = sign * prod dominoes^e (unsigned dominoes); found by log least squares and confirmed exactly at `checks` random Gr(4,n) points
SignedMonomial express_in_dominoes(const Functionary& zeta, const DominoVariables& dom, int n, Rng& rng, int checks = 25);

// Mut / AFacet as sets of unique variable ids
struct Classification {
    std::vector<int> mut, afacet;
    std::vector<bool> frozen;  // per unique variable
};
Classification classify_variables(const ChordDiagram& D, const DominoVariables& dom);

struct Seed {
    std::vector<std::string> name;
    std::vector<bool> frozen;
    std::vector<Functionary> var;
    std::vector<int> sign;                // s_x; the variable times s_x is positive on the tile
    std::vector<std::vector<int>> B;      // B[i][j] = #(i->j) - #(j->i)
    std::vector<std::pair<int, int>> dotted;
    int size() const { return int(name.size()); }
    int index(const std::string& nm) const;  // -1 if absent
};
Seed build_tile_seed(const StandardTile& t);
// exchange polynomial pieces at vertex v: (product over arrows in, product over arrows out)
std::pair<Functionary, Functionary> exchange_monomials(const Seed& s, int v);
Seed mutate(const Seed& s, int v, const TwistorPoint* sign_point = nullptr);
bool positivity_test(const TwistorPoint& Y, const Seed& s);

// Laurent monomial expression N of each coordinate functionary in signed dominoes
struct CoordinateMonomials {
    std::vector<std::array<LaurentMonomial, 5>> N;  // [chord][letter]
};
CoordinateMonomials coordinate_monomials(const StandardTile& t, Rng& rng);

// m: unique domino variable -> Laurent monomial in gamma-hat_j, stored as chord index j -> exponent
struct ScalingMap {
    std::vector<bool> in_gamma;     // per chord: gamma-hat_i belongs to Gamma
    std::vector<LaurentMonomial> m;  // per unique variable
};
ScalingMap scaling_map(const ChordDiagram& D, const DominoVariables& dom, const CoordinateMonomials& cm);
// the two scaling conditions and the degree identity; empty string if all hold
std::string check_scaling_map(const ChordDiagram& D, const DominoVariables& dom, const CoordinateMonomials& cm,
                              const ScalingMap& sm);
std::string to_string(const LaurentMonomial& gm, const char* base = "gamma");

struct TileCoordinates {
    std::vector<int> vars;                    // unique domino ids carrying a tile variable (4k of them)
    std::vector<LaurentMonomial> monomial;    // tile variable as a monomial in signed dominoes
};
TileCoordinates tile_coordinates(const StandardTile& t, const ScalingMap& sm);
std::vector<Q> tile_variables(const StandardTile& t, const TileCoordinates& tc, const TwistorPoint& Y);
Seed tile_seed(const StandardTile& t, const ScalingMap& sm, const TileCoordinates& tc);

// signed-domino monomial evaluated at a point
Q evaluate_signed(const StandardTile& t, const LaurentMonomial& m, Evaluator& ev);
// coordinate functionaries made positive by coord_sign
std::vector<std::array<Q, 5>> coordinate_values(const StandardTile& t, const TwistorPoint& Y);

// Designated butterfly edges per letter: alpha..eps -> x6, x8, x10, x1, x12.
extern const std::array<int, 5> kDesignatedEdge;

// ratio zeta_{i,z}/zeta_{i,alpha} = base_{i,z} * prod_{(j,y)} w_{j,y}^E when all other edge weights are 1
struct Calibration {
    std::vector<std::array<Q, 5>> base;
    std::vector<std::array<std::map<std::pair<int, int>, int>, 5>> E;
    std::vector<int> order;  // steps in solving order
};
Calibration calibrate(const StandardTile& t, Rng& rng, int checks = 3);
TwistorPoint tile_inverse(const StandardTile& t, const CoordinateMonomials& cm, const ScalingMap& sm,
                          const TileCoordinates& tc, const Calibration& cal, const std::vector<Q>& p);

nlohmann::json to_json(const Seed& s);

}  // namespace amplitile
